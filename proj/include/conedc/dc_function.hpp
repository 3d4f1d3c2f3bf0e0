#pragma once

// Oracle-level representations of DC objectives and cone-valued DC maps.
// All oracles are expected to be pure functions of their arguments.

#include <functional>
#include <optional>
#include <vector>

#include "conedc/cones.hpp"

namespace conedc {

/// Convex scalar function given by value and one subgradient.
struct ConvexOracle {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> subgradient;

  static ConvexOracle zero(int dim);
  static ConvexOracle constant(int dim, double c);
  static ConvexOracle affine(Vec q, double c);
  /// 0.5 x^T P x + q^T x + c. P is assumed symmetric PSD.
  static ConvexOracle quadratic(Mat P, Vec q, double c);

  ConvexOracle operator+(const ConvexOracle& other) const;
  ConvexOracle scaled(double s) const;
};

/// f0 = g0 - h0 with both parts convex.
struct ScalarDcFunction {
  int dim = 0;
  ConvexOracle g;
  ConvexOracle h;
  double strong_convexity_of_h = 0.0;

  double value(const Vec& x) const { return g.value(x) - h.value(x); }

  /// (g + mu/2 |x|^2) - (h + mu/2 |x|^2); h becomes mu-strongly convex.
  ScalarDcFunction regularized(double mu) const;
};

/// K-convex map, possibly nonsmooth. quad_form_subgrad(x, d) returns an
/// element of the subdifferential of x -> quad_form(value(x), d).
struct ConvexConeMap {
  Cone cone;
  int dim = 0;
  std::function<ConeElement(const Vec&)> value;
  std::function<Vec(const Vec&, const Direction&)> quad_form_subgrad;
};

/// Smooth K-convex map with its Jacobian given as the d partial derivatives.
struct SmoothConeMap {
  Cone cone;
  int dim = 0;
  std::function<ConeElement(const Vec&)> value;
  std::function<std::vector<ConeElement>(const Vec&)> jacobian;

  /// DH(x) u.
  ConeElement apply_derivative(const Vec& x, const Vec& u) const;
};

/// Constraint map F = G - H with F(x) in -K required.
struct ConeDcMap {
  Cone cone;
  int dim = 0;
  ConvexConeMap G;
  SmoothConeMap H;

  ConeElement value(const Vec& x) const { return G.value(x) - H.value(x); }

  /// A single strictly satisfied scalar constraint (-1 <= 0): the unconstrained case.
  static ConeDcMap trivial(int dim);
};

/// Smooth symmetric-matrix-valued map with partial derivatives.
struct SmoothMatrixMap {
  int order = 0;
  int dim = 0;
  std::function<Mat(const Vec&)> value;
  std::function<std::vector<Mat>(const Vec&)> jacobian;
};

/// Matrix map whose entries carry individual DC splits F_ij = G_ij - H_ij.
/// Entry (i, j) and (j, i) share the same oracle pair.
class ComponentwiseDcMatrix {
 public:
  struct Entry {
    ConvexOracle G;
    ConvexOracle H;
  };

  ComponentwiseDcMatrix(int order, int dim);

  int order() const { return order_; }
  int dim() const { return dim_; }

  void set_entry(int i, int j, Entry entry);
  const Entry& entry(int i, int j) const;

  Mat value(const Vec& x) const;

 private:
  std::size_t index(int i, int j) const;

  int order_;
  int dim_;
  std::vector<Entry> entries_;  // upper triangle, row-major
};

/// Generic map oracle for the K-convexity verifier; the Jacobian is optional.
struct MapOracle {
  Cone cone;
  int dim = 0;
  std::function<ConeElement(const Vec&)> value;
  std::function<std::vector<ConeElement>(const Vec&)> jacobian;  // may be empty

  static MapOracle from(const ConvexConeMap& m);
  static MapOracle from(const SmoothConeMap& m);
  static MapOracle from(const SmoothMatrixMap& m);
};

}  // namespace conedc
