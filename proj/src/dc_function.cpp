#include "conedc/dc_function.hpp"

#include "conedc/error.hpp"

namespace conedc {

ConvexOracle ConvexOracle::zero(int dim) { return constant(dim, 0.0); }

ConvexOracle ConvexOracle::constant(int dim, double c) {
  return {[c](const Vec&) { return c; }, [dim](const Vec&) { return Vec::Zero(dim).eval(); }};
}

ConvexOracle ConvexOracle::affine(Vec q, double c) {
  return {[q, c](const Vec& x) { return q.dot(x) + c; }, [q](const Vec&) { return q; }};
}

ConvexOracle ConvexOracle::quadratic(Mat P, Vec q, double c) {
  if (P.rows() != P.cols() || P.rows() != q.size()) throw Error(ErrorCode::InvalidArgument, "quadratic shape mismatch");
  return {[P, q, c](const Vec& x) { return 0.5 * x.dot(P * x) + q.dot(x) + c; },
          [P, q](const Vec& x) { return (P * x + q).eval(); }};
}

ConvexOracle ConvexOracle::operator+(const ConvexOracle& other) const {
  auto a = *this;
  auto b = other;
  return {[a, b](const Vec& x) { return a.value(x) + b.value(x); },
          [a, b](const Vec& x) { return (a.subgradient(x) + b.subgradient(x)).eval(); }};
}

ConvexOracle ConvexOracle::scaled(double s) const {
  auto a = *this;
  return {[a, s](const Vec& x) { return s * a.value(x); }, [a, s](const Vec& x) { return (s * a.subgradient(x)).eval(); }};
}

ScalarDcFunction ScalarDcFunction::regularized(double mu) const {
  const ConvexOracle prox = ConvexOracle::quadratic(mu * Mat::Identity(dim, dim), Vec::Zero(dim), 0.0);
  return {dim, g + prox, h + prox, strong_convexity_of_h + mu};
}

ConeElement SmoothConeMap::apply_derivative(const Vec& x, const Vec& u) const {
  const auto jac = jacobian(x);
  ConeElement out = ConeElement::zero(cone);
  for (int k = 0; k < dim; ++k) {
    if (u(k) != 0.0) out += jac[k] * u(k);
  }
  return out;
}

ConeDcMap ConeDcMap::trivial(int dim) {
  const Cone k = Cone::orthant(1);
  ConvexConeMap G{k, dim, [](const Vec&) { return ConeElement::scalar(-1.0); },
                  [dim](const Vec&, const Direction&) { return Vec::Zero(dim).eval(); }};
  SmoothConeMap H{k, dim, [](const Vec&) { return ConeElement::scalar(0.0); },
                  [dim](const Vec&) { return std::vector<ConeElement>(dim, ConeElement::scalar(0.0)); }};
  return {k, dim, std::move(G), std::move(H)};
}

ComponentwiseDcMatrix::ComponentwiseDcMatrix(int order, int dim)
    : order_(order), dim_(dim), entries_(static_cast<std::size_t>(order * (order + 1) / 2)) {
  if (order < 1 || dim < 1) throw Error(ErrorCode::InvalidArgument, "componentwise matrix needs order, dim >= 1");
  for (auto& e : entries_) e = {ConvexOracle::zero(dim), ConvexOracle::zero(dim)};
}

std::size_t ComponentwiseDcMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= order_ || j >= order_) throw Error(ErrorCode::InvalidArgument, "entry out of range");
  if (i > j) std::swap(i, j);
  // row i of the upper triangle starts after rows 0..i-1
  return static_cast<std::size_t>(i * order_ - i * (i - 1) / 2 + (j - i));
}

void ComponentwiseDcMatrix::set_entry(int i, int j, Entry entry) { entries_[index(i, j)] = std::move(entry); }

const ComponentwiseDcMatrix::Entry& ComponentwiseDcMatrix::entry(int i, int j) const { return entries_[index(i, j)]; }

Mat ComponentwiseDcMatrix::value(const Vec& x) const {
  Mat F(order_, order_);
  for (int i = 0; i < order_; ++i) {
    for (int j = i; j < order_; ++j) {
      const auto& e = entry(i, j);
      F(i, j) = F(j, i) = e.G.value(x) - e.H.value(x);
    }
  }
  return F;
}

MapOracle MapOracle::from(const ConvexConeMap& m) { return {m.cone, m.dim, m.value, {}}; }

MapOracle MapOracle::from(const SmoothConeMap& m) { return {m.cone, m.dim, m.value, m.jacobian}; }

MapOracle MapOracle::from(const SmoothMatrixMap& m) {
  const Cone k = Cone::psd(m.order);
  auto value = [k, f = m.value](const Vec& x) { return ConeElement(k, {f(x)}); };
  std::function<std::vector<ConeElement>(const Vec&)> jac;
  if (m.jacobian) {
    jac = [k, j = m.jacobian](const Vec& x) {
      std::vector<ConeElement> out;
      for (auto& d : j(x)) out.emplace_back(k, std::vector<Mat>{d});
      return out;
    };
  }
  return {k, m.dim, value, jac};
}

}  // namespace conedc
