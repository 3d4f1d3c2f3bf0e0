#pragma once

// Per-iteration convex subproblems: the concave parts h0 and H are replaced by
// their affine minorants at the base point x_n.

#include <memory>
#include <optional>

#include "conedc/problem.hpp"

namespace conedc {

/// F_lin(x) = G(x) - H(x_n) - DH(x_n)(x - x_n). H(x_n) and DH(x_n) are cached
/// at construction, so instances are immutable snapshots.
class LinearizedConstraint {
 public:
  LinearizedConstraint(const ConeDcMap& map, Vec base);

  const Vec& base() const { return base_; }
  const Cone& cone() const { return map_.cone; }
  const ConeElement& H_base() const { return H_base_; }
  const std::vector<ConeElement>& DH_base() const { return DH_base_; }

  ConeElement value(const Vec& x) const;
  /// Subgradient of x -> quad_form(F_lin(x), d).
  Vec quad_form_subgrad(const Vec& x, const Direction& d) const;

  /// lambda_max(F_lin(x)) and one subgradient of it.
  double scalarized(const Vec& x) const;
  Vec scalarized_subgradient(const Vec& x) const;
  ConvexOracle scalarized_oracle() const;

  /// x -> tau * trace(F_lin(x)+) with the eigenpair-sum subgradient
  /// (only strictly positive eigenvalues contribute).
  ConvexOracle slack_cost_oracle(double tau) const;

 private:
  ConeDcMap map_;
  Vec base_;
  ConeElement H_base_;
  std::vector<ConeElement> DH_base_;
};

enum class SubproblemMode { Constrained, Penalized };

struct SubproblemSpec {
  SubproblemMode mode;
  double tau;  // 0 in constrained mode
  Vec base;
  Vec v;  // element of dh0(base)
  /// g0(x) - <v, x - base>, plus tau * trace(F_lin(x)+) in penalized mode.
  ConvexOracle objective;
  /// Scalarized linearized constraint, constrained mode only.
  std::optional<ConvexOracle> constraint;
  FeasibleSet feasible_set;
  std::shared_ptr<const LinearizedConstraint> linearization;
};

SubproblemSpec build_constrained(const ProblemInstance& problem, const Vec& x_n, const Vec& v_n);
/// Throws InvalidPenalty for tau <= 0.
SubproblemSpec build_penalized(const ProblemInstance& problem, const Vec& x_n, const Vec& v_n, double tau);

/// s = F_lin(x)+ : the optimal slack for fixed x. Requires a penalized spec.
ConeElement recover_slack(const SubproblemSpec& spec, const Vec& x);

}  // namespace conedc
