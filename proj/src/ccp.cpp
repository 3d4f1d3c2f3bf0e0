#include "conedc/ccp.hpp"

#include <cmath>

#include "conedc/error.hpp"

namespace conedc {

std::string to_string(CcpTermination t) {
  switch (t) {
    case CcpTermination::CriticalFixedPoint: return "CriticalFixedPoint";
    case CcpTermination::SmallObjectiveChange: return "SmallObjectiveChange";
    case CcpTermination::SmallStep: return "SmallStep";
    case CcpTermination::MaxIter: return "MaxIter";
    case CcpTermination::SubproblemInfeasible: return "SubproblemInfeasible";
  }
  return "unknown";
}

IterationTrace run_ccp(const ProblemInstance& problem, const Vec& x0, const CcpConfig& config) {
  if (!(config.eps_f > 0.0) || !(config.eps_x > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps_f, eps_x must be > 0");
  if (x0.size() != problem.dim()) throw Error(ErrorCode::InvalidArgument, "x0 has the wrong dimension");
  const double infeas0 = dist_to_neg_cone(problem.constraint.value(x0));
  if (!problem.feasible_set.contains(x0) || infeas0 > config.tol_feas) {
    throw Error(ErrorCode::InfeasibleStart, "x0 infeasible: dist(F(x0), -K) = " + std::to_string(infeas0));
  }

  IterationTrace trace;
  Vec x = x0;
  double f = problem.objective.value(x);
  trace.records.push_back({0, x, f, infeas0, SolveStatus::Optimal, Vec()});

  for (int n = 0;; ++n) {
    if (n >= config.max_iter) {
      trace.termination = CcpTermination::MaxIter;
      break;
    }
    const Vec v = problem.objective.h.subgradient(x);
    trace.records.back().v = v;
    const SolveReport rep = solve_convex(build_constrained(problem, x, v), config.inner);
    if (rep.status == SolveStatus::Infeasible) {
      trace.termination = CcpTermination::SubproblemInfeasible;
      throw Error(ErrorCode::SubproblemInfeasible, "linearized subproblem infeasible at a feasible base point");
    }
    const Vec& x_next = rep.x_hat;
    const double step = (x_next - x).norm();
    if (step <= 1e-9 * (1.0 + x.norm())) {
      trace.termination = CcpTermination::CriticalFixedPoint;
      break;
    }
    const double f_next = problem.objective.value(x_next);
    const double infeas = dist_to_neg_cone(problem.constraint.value(x_next));
    if (config.check_invariants) {
      if (infeas > 1e-7) {
        throw Error(ErrorCode::InvariantViolation, "iterate " + std::to_string(n + 1) + " infeasible: " + std::to_string(infeas));
      }
      if (f_next > f + 1e-8 * (1.0 + std::abs(f))) {
        throw Error(ErrorCode::InvariantViolation, "objective increased at iterate " + std::to_string(n + 1));
      }
    }
    trace.records.push_back({n + 1, x_next, f_next, infeas, rep.status, Vec()});
    const double df = std::abs(f_next - f);
    x = x_next;
    f = f_next;
    if (df < config.eps_f) {
      trace.termination = CcpTermination::SmallObjectiveChange;
      break;
    }
    if (problem.objective.strong_convexity_of_h > 0.0 && step < config.eps_x) {
      trace.termination = CcpTermination::SmallStep;
      break;
    }
  }
  return trace;
}

bool check_strong_descent(const IterationTrace& trace, double mu) {
  const auto& r = trace.records;
  for (std::size_t n = 0; n + 1 < r.size(); ++n) {
    if (r[n + 1].f0 > r[n].f0 - 0.5 * mu * (r[n + 1].x - r[n].x).squaredNorm() + 1e-8) return false;
  }
  return true;
}

}  // namespace conedc
