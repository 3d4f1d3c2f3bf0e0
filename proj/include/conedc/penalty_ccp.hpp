#pragma once

// Penalty convex-concave procedure: infeasible starts, penalty t_n = tau_n e
// along the cone identity, slack recovered in closed form.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "conedc/convex_inner.hpp"

namespace conedc {

struct PenaltyConfig {
  double tau0 = 1.0;
  double mu = 2.0;      // growth factor, > 1
  double kappa = 1e-6;  // grow tau only while |s_{n+1}| >= kappa
  double tau_max = std::numeric_limits<double>::infinity();  // cap on |t_n| = tau_n |e|
  double eps_merit = 1e-9;
  int max_iter = 1000;
  bool check_invariants = false;
  InnerOptions inner{};
};

enum class PenaltyTermination { FixedPoint, SmallMeritChange, MaxIter };

struct PenaltyRecord {
  int n;
  Vec x;
  ConeElement s;
  double s_trace;  // <e, s_n>
  double s_norm;
  double tau;      // tau_n, the penalty applied in the subproblem based at x_n
  double f0;
  double merit;    // f0(x_n) + tau_n <e, s_n>
  double infeasibility;
  SolveStatus subproblem_status;
};

struct PenaltyTrace {
  std::vector<PenaltyRecord> records;
  PenaltyTermination termination = PenaltyTermination::MaxIter;
  int subproblems = 0;
  /// Minimizer of the last subproblem; equals x_n (within tolerance) on FixedPoint.
  Vec last_solution;
  // Parameters needed to replay the penalty update.
  double mu = 0.0;
  double kappa = 0.0;
  double tau_max = 0.0;
  double e_norm = 0.0;
};

std::string to_string(PenaltyTermination t);

/// Requires x0 in A (InvalidArgument otherwise); feasibility for F is not required.
PenaltyTrace run_penalty_ccp(const ProblemInstance& problem, const Vec& x0, const PenaltyConfig& config = {});

/// tau_{n+1} from tau_n and |s_{n+1}|.
double next_tau(double tau, double s_norm_next, double mu, double kappa, double tau_max, double e_norm);

/// f0(x_{n+1}) + tau_n <e, s_{n+1}> <= f0(x_n) + tau_n <e, s_n> + 1e-8 for all n.
bool check_merit_decrease(const PenaltyTrace& trace);

/// Every recorded tau_{n+1} equals next_tau(tau_n, |s_{n+1}|, ...) exactly.
bool replay_penalty_updates(const PenaltyTrace& trace);

/// Smallest m with |s_n| <= tol_feas for all n >= m.
std::optional<int> detect_feasible_handoff(const PenaltyTrace& trace, double tol_feas);

}  // namespace conedc
