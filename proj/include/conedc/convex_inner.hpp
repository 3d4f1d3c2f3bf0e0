#pragma once

// Certified solver for the convex subproblems: Kelley cutting planes on a
// warm-started LP master, with a bisection specialization for d = 1.

#include <optional>
#include <vector>

#include "conedc/subproblem.hpp"

namespace conedc {

struct InnerOptions {
  double tol = 1e-8;       // stop when UB - LB <= tol * max(1, |UB|)
  double tol_feas = 1e-8;  // constraint violation accepted for incumbents
  int max_cuts = 5000;
  bool use_1d_specialization = true;
  /// First cutting-plane query point; the box center when absent or outside A.
  /// solve_convex uses the subproblem's base point.
  std::optional<Vec> start;
};

enum class SolveStatus { Optimal, Infeasible, IterLimit };

struct SolveReport {
  Vec x_hat;
  double objective_value = 0.0;
  double constraint_violation = 0.0;  // max(c(x_hat), 0); 0 when unconstrained
  double gap_bound = 0.0;             // objective_value - certified lower bound
  SolveStatus status = SolveStatus::IterLimit;
  /// For Infeasible: certified lower bound on min_A c (> tol_feas).
  double infeasibility_certificate = 0.0;
  int iterations = 0;
  bool lower_bound_monotone = true;
};

/// min objective(x) s.t. constraint(x) <= 0 (if given), x in set.
SolveReport minimize_convex(const ConvexOracle& objective, const std::optional<ConvexOracle>& constraint,
                            const FeasibleSet& set, const InnerOptions& opts = {});

/// Same problem, always through the cutting-plane path.
SolveReport minimize_convex_kelley(const ConvexOracle& objective, const std::optional<ConvexOracle>& constraint,
                                   const FeasibleSet& set, const InnerOptions& opts = {});

SolveReport solve_convex(const SubproblemSpec& spec, const InnerOptions& opts = {});

struct SlaterResult {
  bool holds = false;
  Vec x;                     // best point found
  double min_value = 0.0;    // lambda_max(F_lin(x)) at that point
  double lower_bound = 0.0;  // certified lower bound on min_A lambda_max(F_lin)
};

/// Looks for x in A with lambda_max(F_lin(x)) < -tol.
SlaterResult slater_probe(const LinearizedConstraint& lin, const FeasibleSet& set, double tol = 1e-8,
                          const InnerOptions& opts = {});

}  // namespace conedc
