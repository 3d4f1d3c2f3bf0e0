#pragma once

// Convex-concave procedure from a feasible start.

#include <string>
#include <vector>

#include "conedc/convex_inner.hpp"

namespace conedc {

struct CcpConfig {
  double eps_f = 1e-8;  // stop when |f0(x_{n+1}) - f0(x_n)| < eps_f
  double eps_x = 1e-9;  // stop when |x_{n+1} - x_n| < eps_x, only if h0 is strongly convex
  int max_iter = 500;
  bool check_invariants = false;
  double tol_feas = 1e-8;
  InnerOptions inner{};
};

enum class CcpTermination { CriticalFixedPoint, SmallObjectiveChange, SmallStep, MaxIter, SubproblemInfeasible };

struct CcpRecord {
  int n;
  Vec x;
  double f0;
  double infeasibility;
  /// Status of the subproblem that produced x (Optimal for the start point).
  SolveStatus subproblem_status;
  Vec v;  // element of dh0(x) used for the next subproblem; empty on the last record
};

struct IterationTrace {
  std::vector<CcpRecord> records;
  CcpTermination termination = CcpTermination::MaxIter;
};

std::string to_string(CcpTermination t);

/// Throws InfeasibleStart when x0 is outside A or dist(F(x0), -K) > tol_feas.
/// With check_invariants set, a feasibility or descent violation throws InvariantViolation.
IterationTrace run_ccp(const ProblemInstance& problem, const Vec& x0, const CcpConfig& config = {});

/// f0(x_{n+1}) <= f0(x_n) - (mu/2)|x_{n+1} - x_n|^2 + 1e-8 for all consecutive records.
bool check_strong_descent(const IterationTrace& trace, double mu);

}  // namespace conedc
