#include "conedc/problem_file.hpp"

#include <cmath>
#include <fstream>

#include "conedc/error.hpp"

namespace conedc {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) schema(where + ": missing \"" + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(where + ": non-finite number");
  return v;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema(where + ": expected a nonnegative integer");
  return static_cast<int>(j.get<long long>());
}

Vec vector_of(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + ": expected an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = number(j[i], where);
  return v;
}

Mat matrix_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where + ": expected a nonempty array of rows");
  const std::size_t rows = j.size();
  Mat m(rows, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != rows) schema(where + ": expected a square matrix");
    for (std::size_t c = 0; c < rows; ++c) m(r, c) = number(j[r][c], where);
  }
  return m;
}

Mat symmetric_of(const json& j, const std::string& where) {
  Mat m = matrix_of(j, where);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    schema(where + ": matrix is not symmetric");
  }
  return m;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json vector_to_json(const Vec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

std::pair<Vec, Vec> box_of(const json& doc, int dim) {
  const json& box = field(doc, "box", "box");
  Vec lo = vector_of(field(box, "lo", "box"), "box.lo");
  Vec hi = vector_of(field(box, "hi", "box"), "box.hi");
  if (lo.size() != dim || hi.size() != dim) schema("box: bounds must have length " + std::to_string(dim));
  if ((lo.array() > hi.array()).any()) schema("box: lo must not exceed hi");
  return {lo, hi};
}

std::optional<KnownFacts> facts_of(const json& doc, int dim) {
  if (!doc.contains("known_facts")) return std::nullopt;
  const json& j = doc.at("known_facts");
  if (!j.is_object()) schema("known_facts: expected an object");
  KnownFacts f;
  const auto points = [&](const char* key, std::vector<Vec>& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_array()) schema(std::string("known_facts.") + key + ": expected an array of points");
    for (const auto& p : j.at(key)) {
      Vec v = vector_of(p, std::string("known_facts.") + key);
      if (v.size() != dim) schema(std::string("known_facts.") + key + ": wrong dimension");
      out.push_back(std::move(v));
    }
  };
  points("critical_points", f.critical_points);
  points("global_optima", f.global_optima);
  if (j.contains("strictly_feasible_point")) {
    Vec v = vector_of(j.at("strictly_feasible_point"), "known_facts.strictly_feasible_point");
    if (v.size() != dim) schema("known_facts.strictly_feasible_point: wrong dimension");
    f.strictly_feasible_point = std::move(v);
  }
  if (j.contains("notes")) {
    if (!j.at("notes").is_string()) schema("known_facts.notes: expected a string");
    f.notes = j.at("notes").get<std::string>();
  }
  return f;
}

// ---------------------------------------------------------------- polynomials

struct Monomial {
  double coef;
  std::vector<int> powers;
};

using Polynomial = std::vector<Monomial>;

Polynomial polynomial_of(const json& j, int dim, const std::string& where) {
  Polynomial p;
  if (j.is_object() && j.contains("coeffs")) {
    if (dim != 1) schema(where + ": \"coeffs\" is only allowed for dim 1");
    const Vec c = vector_of(j.at("coeffs"), where + ".coeffs");
    for (int k = 0; k < c.size(); ++k) {
      if (c(k) != 0.0) p.push_back({c(k), {k}});
    }
    return p;
  }
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) {
    schema(where + ": expected {\"coeffs\": [...]} or {\"terms\": [...]}");
  }
  for (const auto& t : j.at("terms")) {
    Monomial m{number(field(t, "coef", where), where + ".coef"), {}};
    const json& pw = field(t, "powers", where);
    if (!pw.is_array() || static_cast<int>(pw.size()) != dim) schema(where + ": powers must have length dim");
    for (const auto& e : pw) m.powers.push_back(integer(e, where + ".powers"));
    p.push_back(std::move(m));
  }
  return p;
}

double poly_value(const Polynomial& p, const Vec& x) {
  double s = 0.0;
  for (const auto& m : p) {
    double t = m.coef;
    for (std::size_t i = 0; i < m.powers.size(); ++i) t *= std::pow(x(i), m.powers[i]);
    s += t;
  }
  return s;
}

Vec poly_gradient(const Polynomial& p, const Vec& x) {
  Vec g = Vec::Zero(x.size());
  for (const auto& m : p) {
    for (std::size_t k = 0; k < m.powers.size(); ++k) {
      if (m.powers[k] == 0) continue;
      double t = m.coef * m.powers[k] * std::pow(x(k), m.powers[k] - 1);
      for (std::size_t i = 0; i < m.powers.size(); ++i) {
        if (i != k) t *= std::pow(x(i), m.powers[i]);
      }
      g(k) += t;
    }
  }
  return g;
}

ConvexOracle convex_polynomial(const Polynomial& p, const FeasibleSet& box, const std::string& where) {
  ConvexOracle f{[p](const Vec& x) { return poly_value(p, x); }, [p](const Vec& x) { return poly_gradient(p, x); }};
  if (!check_midpoint_convexity(f.value, box, 400, 11)) schema(where + ": polynomial is not convex on the box");
  return f;
}

LoadedProblem scalar_dc_polynomial(const json& doc, const std::string& name) {
  const int dim = integer(field(doc, "dim", "scalar_dc_polynomial"), "dim");
  if (dim < 1) schema("dim: must be positive");
  auto [lo, hi] = box_of(doc, dim);
  const FeasibleSet box(lo, hi);
  const json& obj = field(doc, "objective", "scalar_dc_polynomial");
  ConvexOracle g = convex_polynomial(polynomial_of(field(obj, "g", "objective"), dim, "objective.g"), box, "objective.g");
  ConvexOracle h = obj.contains("h")
                       ? convex_polynomial(polynomial_of(obj.at("h"), dim, "objective.h"), box, "objective.h")
                       : ConvexOracle::zero(dim);
  ScalarDcFunction f0{dim, std::move(g), std::move(h), 0.0};

  ConeDcMap F = ConeDcMap::trivial(dim);
  if (doc.contains("constraints")) {
    const json& cs = doc.at("constraints");
    if (!cs.is_array() || cs.empty()) schema("constraints: expected a nonempty array");
    const int m = static_cast<int>(cs.size());
    std::vector<ConvexOracle> Gs;
    std::vector<Polynomial> Hs;
    for (int i = 0; i < m; ++i) {
      const std::string where = "constraints[" + std::to_string(i) + "]";
      Gs.push_back(convex_polynomial(polynomial_of(field(cs[i], "G", where), dim, where + ".G"), box, where + ".G"));
      Polynomial hp = cs[i].contains("H") ? polynomial_of(cs[i].at("H"), dim, where + ".H") : Polynomial{};
      convex_polynomial(hp, box, where + ".H");
      Hs.push_back(std::move(hp));
    }
    const Cone k = Cone::orthant(m);
    if (doc.contains("cone") && !(cone_from_json(doc.at("cone")) == k)) {
      schema("cone: scalar constraints need {\"orthant\": " + std::to_string(m) + "}");
    }
    ConvexConeMap G{k, dim,
                    [k, Gs, m](const Vec& x) {
                      Mat v(m, 1);
                      for (int i = 0; i < m; ++i) v(i, 0) = Gs[i].value(x);
                      return ConeElement(k, {v});
                    },
                    [Gs, m, dim](const Vec& x, const Direction& d) {
                      Vec g = Vec::Zero(dim);
                      for (int i = 0; i < m; ++i) {
                        if (d.v(i) != 0.0) g += d.v(i) * d.v(i) * Gs[i].subgradient(x);
                      }
                      return g;
                    }};
    SmoothConeMap H{k, dim,
                    [k, Hs, m](const Vec& x) {
                      Mat v(m, 1);
                      for (int i = 0; i < m; ++i) v(i, 0) = poly_value(Hs[i], x);
                      return ConeElement(k, {v});
                    },
                    [k, Hs, m, dim](const Vec& x) {
                      Mat J(m, dim);
                      for (int i = 0; i < m; ++i) J.row(i) = poly_gradient(Hs[i], x).transpose();
                      std::vector<ConeElement> out;
                      for (int c = 0; c < dim; ++c) out.emplace_back(k, std::vector<Mat>{J.col(c)});
                      return out;
                    }};
    F = ConeDcMap{k, dim, std::move(G), std::move(H)};
  }
  ProblemInstance p{name, std::move(f0), std::move(F), box, facts_of(doc, dim), std::nullopt};
  try {
    self_check(p);
  } catch (const Error& e) {
    schema(e.what());
  }
  return {std::move(p), std::nullopt};
}

QuadraticSdpData quadratic_data_of(const json& doc) {
  QuadraticSdpData d;
  d.F.C = symmetric_of(field(doc, "C", "quadratic_sdp"), "C");
  const int l = static_cast<int>(d.F.C.rows());
  const json& B = field(doc, "B", "quadratic_sdp");
  if (!B.is_array() || B.empty()) schema("B: expected a nonempty array of matrices");
  for (std::size_t i = 0; i < B.size(); ++i) {
    d.F.B.push_back(symmetric_of(B[i], "B[" + std::to_string(i) + "]"));
    if (d.F.B.back().rows() != l) schema("B: matrices must match the size of C");
  }
  const int dim = static_cast<int>(d.F.B.size());
  d.F.A.assign(dim, std::vector<Mat>(dim, Mat::Zero(l, l)));
  if (doc.contains("A")) {
    const json& A = doc.at("A");
    if (!A.is_array()) schema("A: expected an array of {i, j, matrix}");
    for (const auto& e : A) {
      const int i = integer(field(e, "i", "A"), "A.i");
      const int j = integer(field(e, "j", "A"), "A.j");
      if (i >= dim || j >= dim) schema("A: index out of range");
      Mat m = symmetric_of(field(e, "matrix", "A"), "A.matrix");
      if (m.rows() != l) schema("A: matrices must match the size of C");
      // A_ij and A_ji multiply the same monomial: a single entry supplies both.
      if (i == j) {
        d.F.A[i][i] = m;
      } else {
        d.F.A[i][j] = d.F.A[j][i] = 0.5 * m;
      }
    }
  }
  const json& obj = field(doc, "objective", "quadratic_sdp");
  d.P = obj.contains("P") ? symmetric_of(obj.at("P"), "objective.P") : Mat::Zero(dim, dim);
  d.q = obj.contains("q") ? vector_of(obj.at("q"), "objective.q") : Vec::Zero(dim);
  d.Q = obj.contains("Q") ? symmetric_of(obj.at("Q"), "objective.Q") : Mat::Zero(dim, dim);
  if (d.P.rows() != dim || d.q.size() != dim || d.Q.rows() != dim) schema("objective: sizes must match dim");
  for (const Mat* m : {&d.P, &d.Q}) {
    if (Eigen::SelfAdjointEigenSolver<Mat>(*m, Eigen::EigenvaluesOnly).eigenvalues()(0) < -1e-10) {
      schema("objective: P and Q must be positive semidefinite");
    }
  }
  std::tie(d.lo, d.hi) = box_of(doc, dim);
  if (doc.contains("cone") && !(cone_from_json(doc.at("cone")) == Cone::psd(l))) {
    schema("cone: quadratic_sdp needs {\"psd\": " + std::to_string(l) + "}");
  }
  return d;
}

}  // namespace

Cone cone_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1) schema("cone: expected {\"psd\": n}, {\"orthant\": m} or {\"product\": [...]}");
  if (j.contains("psd")) {
    const int n = integer(j.at("psd"), "cone.psd");
    if (n < 1) schema("cone.psd: must be positive");
    return Cone::psd(n);
  }
  if (j.contains("orthant")) {
    const int m = integer(j.at("orthant"), "cone.orthant");
    if (m < 1) schema("cone.orthant: must be positive");
    return Cone::orthant(m);
  }
  if (j.contains("product")) {
    const json& fs = j.at("product");
    if (!fs.is_array() || fs.empty()) schema("cone.product: expected a nonempty array");
    std::vector<Cone> factors;
    for (const auto& f : fs) factors.push_back(cone_from_json(f));
    return Cone::product(std::move(factors));
  }
  schema("cone: unknown cone kind");
}

json cone_to_json(const Cone& cone) {
  switch (cone.kind()) {
    case Cone::Kind::Psd: return {{"psd", cone.size()}};
    case Cone::Kind::Orthant: return {{"orthant", cone.size()}};
    case Cone::Kind::Product: {
      json fs = json::array();
      for (const auto& f : cone.factors()) fs.push_back(cone_to_json(f));
      return {{"product", fs}};
    }
  }
  return nullptr;
}

LoadedProblem problem_from_json(const json& doc) {
  if (!doc.is_object()) schema("document: expected an object");
  const json& kind = field(doc, "kind", "document");
  if (!kind.is_string()) schema("kind: expected a string");
  const std::string k = kind.get<std::string>();
  std::string name = k;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) schema("name: expected a string");
    name = doc.at("name").get<std::string>();
  }
  LoadedProblem out = [&]() -> LoadedProblem {
    if (k == "builtin") {
      try {
        return {builtin(name), std::nullopt};
      } catch (const Error& e) {
        schema(e.what());
      }
    }
    if (k == "quadratic_sdp") {
      QuadraticSdpData data = quadratic_data_of(doc);
      std::optional<double> mu;
      if (doc.contains("mu")) mu = number(doc.at("mu"), "mu");
      auto facts = facts_of(doc, data.F.dim());
      if (facts && facts->strictly_feasible_point) data.strictly_feasible_point = facts->strictly_feasible_point;
      ProblemInstance p = [&] {
        try {
          return quadratic_sdp(data, mu, name);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::BoundTooSmall) throw;
          schema(e.what());
        }
      }();
      if (facts) p.known_facts = facts;
      return {std::move(p), std::nullopt};
    }
    if (k == "scalar_dc_polynomial") return scalar_dc_polynomial(doc, name);
    schema("kind: expected \"builtin\", \"quadratic_sdp\" or \"scalar_dc_polynomial\"");
  }();
  if (doc.contains("x0")) {
    Vec x0 = vector_of(doc.at("x0"), "x0");
    if (x0.size() != out.problem.dim()) schema("x0: wrong dimension");
    out.x0 = std::move(x0);
  }
  return out;
}

LoadedProblem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open problem file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  return problem_from_json(doc);
}

json export_quadratic_sdp(const QuadraticSdpData& data, const std::string& name) {
  json doc;
  doc["kind"] = "quadratic_sdp";
  doc["name"] = name;
  doc["cone"] = cone_to_json(Cone::psd(data.F.order()));
  doc["C"] = matrix_to_json(data.F.C);
  doc["B"] = json::array();
  for (const auto& b : data.F.B) doc["B"].push_back(matrix_to_json(b));
  doc["A"] = json::array();
  const int d = data.F.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const Mat m = i == j ? data.F.A[i][i] : Mat(data.F.A[i][j] + data.F.A[j][i]);
      if (m.cwiseAbs().maxCoeff() > 0.0) doc["A"].push_back({{"i", i}, {"j", j}, {"matrix", matrix_to_json(m)}});
    }
  }
  doc["objective"] = {{"P", matrix_to_json(data.P)}, {"q", vector_to_json(data.q)}, {"Q", matrix_to_json(data.Q)}};
  doc["box"] = {{"lo", vector_to_json(data.lo)}, {"hi", vector_to_json(data.hi)}};
  if (data.strictly_feasible_point) {
    doc["known_facts"] = {{"strictly_feasible_point", vector_to_json(*data.strictly_feasible_point)}};
  }
  return doc;
}

json export_builtin(const std::string& name) {
  builtin(name);
  return {{"kind", "builtin"}, {"name", name}};
}

}  // namespace conedc
