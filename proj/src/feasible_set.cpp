#include "conedc/feasible_set.hpp"

#include <cmath>
#include <numbers>

#include "conedc/error.hpp"
#include "conedc/simplex.hpp"

namespace conedc {

FeasibleSet::FeasibleSet(Vec lo, Vec hi, std::vector<AffineInequality> affine)
    : lo_(std::move(lo)), hi_(std::move(hi)), affine_(std::move(affine)) {
  if (lo_.size() != hi_.size() || lo_.size() == 0) throw Error(ErrorCode::InvalidFeasibleSet, "box bounds mismatch");
  if (!lo_.allFinite() || !hi_.allFinite()) throw Error(ErrorCode::InvalidFeasibleSet, "box must be finite");
  for (int i = 0; i < dim(); ++i) {
    if (lo_(i) > hi_(i)) throw Error(ErrorCode::InvalidFeasibleSet, "lo > hi in coordinate " + std::to_string(i));
  }
  for (const auto& h : affine_) {
    if (h.a.size() != lo_.size() || !h.a.allFinite() || !std::isfinite(h.b)) {
      throw Error(ErrorCode::InvalidFeasibleSet, "malformed affine inequality");
    }
  }
  if (affine_.empty()) return;

  // Shifted variables y = x - lo >= 0.
  DenseSimplex lp(dim());
  for (int i = 0; i < dim(); ++i) lp.add_row(Vec::Unit(dim(), i), hi_(i) - lo_(i));
  for (const auto& h : affine_) lp.add_row(h.a, h.b - h.a.dot(lo_));
  if (lp.solve().status != LpSolution::Status::Optimal) throw Error(ErrorCode::InvalidFeasibleSet, "feasible set is empty");
}

FeasibleSet FeasibleSet::box(int dim, double lo, double hi) {
  return FeasibleSet(Vec::Constant(dim, lo), Vec::Constant(dim, hi));
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  if (x.size() != lo_.size()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (x(i) < lo_(i) - tol || x(i) > hi_(i) + tol) return false;
  }
  for (const auto& h : affine_) {
    if (h.a.dot(x) > h.b + tol * (1.0 + std::abs(h.b))) return false;
  }
  return true;
}

Vec FeasibleSet::clamp(const Vec& x) const { return x.cwiseMax(lo_).cwiseMin(hi_); }

Vec FeasibleSet::sample_box(std::mt19937_64& rng) const {
  Vec x(dim());
  for (int i = 0; i < dim(); ++i) x(i) = uniform(rng, lo_(i), hi_(i));
  return x;
}

double standard_normal(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec unit_sphere(std::mt19937_64& rng, int n) {
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = standard_normal(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace conedc
