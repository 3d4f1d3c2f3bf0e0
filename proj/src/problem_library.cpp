#include "conedc/problem_library.hpp"

#include <cmath>
#include <random>

#include "conedc/error.hpp"

namespace conedc {

ProblemInstance example29() {
  const Cone k = Cone::orthant(1);
  ScalarDcFunction f0{1, ConvexOracle::quadratic(Mat::Constant(1, 1, 2.0), Vec::Constant(1, -1.0), 0.25),
                      ConvexOracle::zero(1), 0.0};
  ConvexConeMap G{k, 1, [](const Vec& x) { return ConeElement::scalar(x(0) * x(0)); },
                  [](const Vec& x, const Direction& d) { return Vec::Constant(1, d.v(0) * d.v(0) * 2.0 * x(0)).eval(); }};
  SmoothConeMap H{k, 1, [](const Vec& x) { return ConeElement::scalar(std::pow(x(0), 4)); },
                  [](const Vec& x) { return std::vector<ConeElement>{ConeElement::scalar(4.0 * std::pow(x(0), 3))}; }};
  KnownFacts facts;
  facts.critical_points = {Vec::Constant(1, -1.0), Vec::Constant(1, 0.0), Vec::Constant(1, 1.0)};
  facts.global_optima = {Vec::Constant(1, 1.0)};
  facts.multipliers = {{Vec::Constant(1, -1.0), ConeElement::scalar(1.5)}, {Vec::Constant(1, 1.0), ConeElement::scalar(0.5)}};
  facts.notes = "feasible set (-inf,-1] u {0} u [1,inf) within the box; Slater fails only at 0";
  ProblemInstance p{"example29", std::move(f0), ConeDcMap{k, 1, std::move(G), std::move(H)},
                    FeasibleSet::box(1, -10.0, 10.0), std::move(facts), std::nullopt};
  self_check(p);
  return p;
}

namespace {

bool symmetric(const Mat& m) {
  return m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
}

Mat random_symmetric(std::mt19937_64& rng, int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = uniform(rng, -1.0, 1.0);
  }
  return m;
}

Mat random_matrix(std::mt19937_64& rng, int r, int c) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) m(i, j) = uniform(rng, -1.0, 1.0);
  }
  return m;
}

}  // namespace

void validate(const QuadraticMapData& data) {
  const int d = data.dim();
  const int l = data.order();
  if (l < 1 || !symmetric(data.C)) throw Error(ErrorCode::InvalidArgument, "C must be square and symmetric");
  if (static_cast<int>(data.A.size()) != d) throw Error(ErrorCode::InvalidArgument, "A must be d x d");
  for (int i = 0; i < d; ++i) {
    if (data.B[i].rows() != l || !symmetric(data.B[i])) throw Error(ErrorCode::InvalidArgument, "B_i must be symmetric l x l");
    if (static_cast<int>(data.A[i].size()) != d) throw Error(ErrorCode::InvalidArgument, "A must be d x d");
    for (int j = 0; j < d; ++j) {
      if (data.A[i][j].rows() != l || !symmetric(data.A[i][j])) {
        throw Error(ErrorCode::InvalidArgument, "A_ij must be symmetric l x l");
      }
      if ((data.A[i][j] - data.A[j][i]).cwiseAbs().maxCoeff() > 1e-12) {
        throw Error(ErrorCode::InvalidArgument, "A_ij must equal A_ji");
      }
    }
  }
}

SmoothMatrixMap quadratic_matrix_map(const QuadraticMapData& data) {
  const int d = data.dim();
  return {data.order(), d,
          [data, d](const Vec& x) {
            Mat F = data.C;
            for (int i = 0; i < d; ++i) {
              F += x(i) * data.B[i];
              for (int j = 0; j < d; ++j) F += x(i) * x(j) * data.A[i][j];
            }
            return F;
          },
          [data, d](const Vec& x) {
            std::vector<Mat> J(d);
            for (int k = 0; k < d; ++k) {
              J[k] = data.B[k];
              for (int j = 0; j < d; ++j) J[k] += 2.0 * x(j) * data.A[k][j];
            }
            return J;
          }};
}

ComponentwiseDcMatrix componentwise_from_quadratic(const QuadraticMapData& data) {
  const int d = data.dim();
  const int l = data.order();
  ComponentwiseDcMatrix out(l, d);
  for (int s = 0; s < l; ++s) {
    for (int t = s; t < l; ++t) {
      Mat hess(d, d);
      Vec b(d);
      for (int k = 0; k < d; ++k) {
        b(k) = data.B[k](s, t);
        for (int m = 0; m < d; ++m) hess(k, m) = 2.0 * data.A[k][m](s, t);
      }
      Eigen::SelfAdjointEigenSolver<Mat> es(hess);
      const Vec ev = es.eigenvalues();
      const Mat U = es.eigenvectors();
      const Mat pos = U * ev.cwiseMax(0.0).asDiagonal() * U.transpose();
      const Mat neg = U * (-ev).cwiseMax(0.0).asDiagonal() * U.transpose();
      out.set_entry(s, t, {ConvexOracle::quadratic(pos, b, data.C(s, t)), ConvexOracle::quadratic(neg, Vec::Zero(d), 0.0)});
    }
  }
  return out;
}

ProblemInstance quadratic_sdp(const QuadraticSdpData& data, std::optional<double> mu, std::string name) {
  validate(data.F);
  const int d = data.F.dim();
  if (data.P.rows() != d || data.P.cols() != d || data.q.size() != d || data.Q.rows() != d || data.Q.cols() != d ||
      data.lo.size() != d || data.hi.size() != d) {
    throw Error(ErrorCode::InvalidArgument, "objective or box dimensions do not match the map");
  }
  const double M = quadratic_hessian_bound(data.F.A);
  const double mu_v = mu.value_or(data.F.order() * M);
  RegularizedDecomposition dec = regularized_dc_decomposition(quadratic_matrix_map(data.F), {M, true}, mu_v);
  const double q_min = d > 0 ? Eigen::SelfAdjointEigenSolver<Mat>(data.Q, Eigen::EigenvaluesOnly).eigenvalues()(0) : 0.0;
  ScalarDcFunction f0{d, ConvexOracle::quadratic(data.P, data.q, 0.0), ConvexOracle::quadratic(data.Q, Vec::Zero(d), 0.0),
                      std::max(0.0, q_min)};
  std::optional<KnownFacts> facts;
  if (data.strictly_feasible_point) {
    facts.emplace();
    facts->strictly_feasible_point = data.strictly_feasible_point;
  }
  ProblemInstance p{std::move(name), std::move(f0), std::move(dec.map), FeasibleSet(data.lo, data.hi),
                    std::move(facts), componentwise_from_quadratic(data.F)};
  self_check(p);
  return p;
}

QuadraticSdpData random_quadratic_sdp_data(std::uint64_t seed, int dim, int order) {
  if (dim < 1 || dim > 6 || order < 1 || order > 4) throw Error(ErrorCode::InvalidArgument, "need 1 <= d <= 6, 1 <= l <= 4");
  std::mt19937_64 rng(seed);
  QuadraticSdpData out;
  out.F.C = random_symmetric(rng, order);
  for (int i = 0; i < dim; ++i) out.F.B.push_back(random_symmetric(rng, order));
  out.F.A.assign(dim, std::vector<Mat>(dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) out.F.A[i][j] = out.F.A[j][i] = random_symmetric(rng, order);
  }
  const Mat R = random_matrix(rng, dim, dim);
  out.P = R * R.transpose() / dim + 0.5 * Mat::Identity(dim, dim);
  out.q = random_matrix(rng, dim, 1);
  const Mat S = random_matrix(rng, dim, dim);
  out.Q = S * S.transpose() / dim;
  out.lo = Vec::Constant(dim, -2.0);
  out.hi = Vec::Constant(dim, 2.0);
  Vec xbar(dim);
  for (int i = 0; i < dim; ++i) xbar(i) = uniform(rng, -1.0, 1.0);
  const double top = lambda_max_scalarize(ConeElement(Cone::psd(order), {quadratic_matrix_map(out.F).value(xbar)})).value;
  out.F.C -= (top + 0.5) * Mat::Identity(order, order);
  out.strictly_feasible_point = xbar;
  return out;
}

ProblemInstance random_quadratic_sdp(std::uint64_t seed, int dim, int order) {
  return quadratic_sdp(random_quadratic_sdp_data(seed, dim, order), std::nullopt, "quadratic_sdp_" + std::to_string(seed));
}

namespace {

Mat unflatten(const Vec& x, int m, int l) { return Eigen::Map<const Mat>(x.data(), m, l); }

}  // namespace

ConvexConeMap stiefel_G(int m, int l) {
  const Cone k = Cone::product({Cone::psd(l), Cone::psd(l)});
  const Mat I = Mat::Identity(l, l);
  const Mat Z = Mat::Zero(l, l);
  return {k, m * l,
          [k, m, l, I, Z](const Vec& x) {
            const Mat X = unflatten(x, m, l);
            return ConeElement(k, {X.transpose() * X - I, Z});
          },
          [m, l](const Vec& x, const Direction& dir) {
            if (dir.block != 0) return Vec::Zero(m * l).eval();
            const Mat X = unflatten(x, m, l);
            const Mat g = 2.0 * (X * dir.v) * dir.v.transpose();
            return Eigen::Map<const Vec>(g.data(), m * l).eval();
          }};
}

ProblemInstance stiefel(int m, int l, std::optional<ScalarDcFunction> objective) {
  if (l < 1 || m < l) throw Error(ErrorCode::InvalidArgument, "stiefel needs m >= l >= 1");
  const int d = m * l;
  const Cone k = Cone::product({Cone::psd(l), Cone::psd(l)});
  const Mat I = Mat::Identity(l, l);
  const Mat Z = Mat::Zero(l, l);
  SmoothConeMap H{k, d,
                  [k, m, l, I, Z](const Vec& x) {
                    const Mat X = unflatten(x, m, l);
                    return ConeElement(k, {Z, X.transpose() * X - I});
                  },
                  [k, m, l, Z](const Vec& x) {
                    const Mat X = unflatten(x, m, l);
                    std::vector<ConeElement> J;
                    J.reserve(m * l);
                    for (int q = 0; q < l; ++q) {
                      for (int p = 0; p < m; ++p) {
                        Mat E = Mat::Zero(l, l);
                        E.row(q) += X.row(p);
                        E.col(q) += X.row(p).transpose();
                        J.emplace_back(k, std::vector<Mat>{Z, E});
                      }
                    }
                    return J;
                  }};
  const Mat E = Mat::Identity(m, l);
  if (!objective) {
    objective = ScalarDcFunction{d, ConvexOracle::affine(-Eigen::Map<const Vec>(E.data(), d), 0.0), ConvexOracle::zero(d), 0.0};
  }
  if (objective->dim != d) throw Error(ErrorCode::InvalidArgument, "objective dimension must be m * l");
  KnownFacts facts;
  facts.notes = "feasible set is the Stiefel manifold; linearized feasible sets are single points";
  ProblemInstance p{"stiefel_" + std::to_string(m) + "x" + std::to_string(l), std::move(*objective),
                    ConeDcMap{k, d, stiefel_G(m, l), std::move(H)}, FeasibleSet::box(d, -2.0, 2.0), std::move(facts),
                    std::nullopt};
  self_check(p);
  return p;
}

SmoothMatrixMap nonconvex_witness() {
  return quadratic_matrix_map(example1_quadratic_data());
}

ComponentwiseDcMatrix nonconvex_witness_componentwise() {
  ComponentwiseDcMatrix F(2, 1);
  F.set_entry(0, 0, {ConvexOracle::constant(1, 1.0), ConvexOracle::zero(1)});
  F.set_entry(1, 1, {ConvexOracle::constant(1, 1.0), ConvexOracle::zero(1)});
  F.set_entry(0, 1, {ConvexOracle::quadratic(Mat::Constant(1, 1, 2.0), Vec::Zero(1), 0.0), ConvexOracle::zero(1)});
  return F;
}

QuadraticMapData example1_quadratic_data() {
  QuadraticMapData data;
  data.C = Mat::Identity(2, 2);
  data.B = {Mat::Zero(2, 2)};
  Mat A(2, 2);
  A << 0.0, 1.0, 1.0, 0.0;
  data.A = {{A}};
  return data;
}

std::vector<std::string> builtin_names() { return {"example29", "stiefel_1x1", "stiefel_3x2", "quadratic_sdp_42"}; }

ProblemInstance builtin(const std::string& name) {
  if (name == "example29") return example29();
  if (name == "stiefel_1x1") {
    ScalarDcFunction f0{1, ConvexOracle::quadratic(Mat::Constant(1, 1, 2.0), Vec::Constant(1, -1.4), 0.49),
                        ConvexOracle::zero(1), 0.0};
    ProblemInstance p = stiefel(1, 1, std::move(f0));
    p.known_facts->global_optima = {Vec::Constant(1, 1.0)};
    return p;
  }
  if (name == "stiefel_3x2") return stiefel(3, 2);
  if (name == "quadratic_sdp_42") return random_quadratic_sdp(42);
  throw Error(ErrorCode::InvalidArgument, "unknown builtin '" + name + "'");
}

void self_check(const ProblemInstance& problem, int samples, std::uint64_t seed) {
  const FeasibleSet& A = problem.feasible_set;
  if (!check_subgradient_inequality(problem.objective.g, A, samples, seed)) {
    throw Error(ErrorCode::InvalidArgument, problem.name + ": g0 subgradient inequality fails");
  }
  if (!check_subgradient_inequality(problem.objective.h, A, samples, seed + 1)) {
    throw Error(ErrorCode::InvalidArgument, problem.name + ": h0 subgradient inequality fails");
  }
  const ConeDcMap& F = problem.constraint;
  std::mt19937_64 rng(seed + 2);
  const auto& blocks = F.cone.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Direction z{b, unit_sphere(rng, blocks[b].size)};
    const ConvexOracle qf{[&F, z](const Vec& x) { return quad_form(F.G.value(x), z); },
                          [&F, z](const Vec& x) { return F.G.quad_form_subgrad(x, z); }};
    if (!check_subgradient_inequality(qf, A, samples, seed + 3 + b)) {
      throw Error(ErrorCode::InvalidArgument, problem.name + ": G quadratic-form subgradient inequality fails");
    }
  }
  if (!check_jacobian(F.H, A, samples, seed + 100)) {
    throw Error(ErrorCode::InvalidArgument, problem.name + ": Jacobian of H disagrees with finite differences");
  }
}

}  // namespace conedc
