#pragma once

#include <random>
#include <vector>

#include "conedc/cones.hpp"

namespace conedc {

struct AffineInequality {
  Vec a;
  double b;  // a^T x <= b
};

/// The convex set A: a finite box intersected with affine half-spaces.
/// Construction rejects empty sets (one LP feasibility solve when half-spaces
/// are present).
class FeasibleSet {
 public:
  FeasibleSet(Vec lo, Vec hi, std::vector<AffineInequality> affine = {});

  static FeasibleSet box(int dim, double lo, double hi);

  int dim() const { return static_cast<int>(lo_.size()); }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  const std::vector<AffineInequality>& affine() const { return affine_; }

  bool contains(const Vec& x, double tol = 1e-9) const;
  Vec clamp(const Vec& x) const;
  Vec center() const { return 0.5 * (lo_ + hi_); }
  /// Uniform sample from the box (affine constraints ignored).
  Vec sample_box(std::mt19937_64& rng) const;

 private:
  Vec lo_;
  Vec hi_;
  std::vector<AffineInequality> affine_;
};

/// Uniform double in [0, 1) from the top 53 bits: identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Standard normal via Box-Muller on uniform01.
double standard_normal(std::mt19937_64& rng);

/// Uniform point on the unit sphere in R^n.
Vec unit_sphere(std::mt19937_64& rng, int n);

}  // namespace conedc
