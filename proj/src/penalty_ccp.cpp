#include "conedc/penalty_ccp.hpp"

#include <cmath>

#include "conedc/error.hpp"

namespace conedc {

std::string to_string(PenaltyTermination t) {
  switch (t) {
    case PenaltyTermination::FixedPoint: return "FixedPoint";
    case PenaltyTermination::SmallMeritChange: return "SmallMeritChange";
    case PenaltyTermination::MaxIter: return "MaxIter";
  }
  return "unknown";
}

double next_tau(double tau, double s_norm_next, double mu, double kappa, double tau_max, double e_norm) {
  return (s_norm_next >= kappa && mu * tau * e_norm <= tau_max) ? mu * tau : tau;
}

PenaltyTrace run_penalty_ccp(const ProblemInstance& problem, const Vec& x0, const PenaltyConfig& config) {
  if (!(config.tau0 > 0.0) || !std::isfinite(config.tau0)) throw Error(ErrorCode::InvalidPenalty, "tau0 must be positive");
  if (!(config.mu > 1.0)) throw Error(ErrorCode::InvalidArgument, "mu must exceed 1");
  if (!(config.kappa >= 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be nonnegative");
  if (!(config.tau_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "tau_max must be positive");
  if (x0.size() != problem.dim() || !problem.feasible_set.contains(x0)) {
    throw Error(ErrorCode::InvalidArgument, "x0 must lie in the feasible set A");
  }

  const Cone& K = problem.constraint.cone;
  PenaltyTrace trace;
  trace.mu = config.mu;
  trace.kappa = config.kappa;
  trace.tau_max = config.tau_max;
  trace.e_norm = ConeElement::identity(K).norm();

  const auto make_record = [&](int n, const Vec& x, ConeElement s, double tau, SolveStatus st) {
    const double f = problem.objective.value(x);
    const double tr = s.trace();
    const double sn = s.norm();
    const double infeas = dist_to_neg_cone(problem.constraint.value(x));
    return PenaltyRecord{n, x, std::move(s), tr, sn, tau, f, f + tau * tr, infeas, st};
  };

  trace.records.push_back(make_record(0, x0, project_pos(problem.constraint.value(x0)), config.tau0, SolveStatus::Optimal));
  trace.last_solution = x0;

  for (int n = 0;; ++n) {
    if (n >= config.max_iter) {
      trace.termination = PenaltyTermination::MaxIter;
      break;
    }
    const PenaltyRecord& cur = trace.records.back();
    const Vec v = problem.objective.h.subgradient(cur.x);
    const SubproblemSpec spec = build_penalized(problem, cur.x, v, cur.tau);
    const SolveReport rep = solve_convex(spec, config.inner);
    ++trace.subproblems;
    trace.last_solution = rep.x_hat;
    if ((rep.x_hat - cur.x).norm() <= 1e-9 * (1.0 + cur.x.norm())) {
      trace.termination = PenaltyTermination::FixedPoint;
      break;
    }
    ConeElement s = recover_slack(spec, rep.x_hat);
    const double tau_next =
        next_tau(cur.tau, s.norm(), config.mu, config.kappa, config.tau_max, trace.e_norm);
    PenaltyRecord next = make_record(n + 1, rep.x_hat, std::move(s), tau_next, rep.status);
    const double old_merit = cur.merit;
    const double new_merit_same_tau = next.f0 + cur.tau * next.s_trace;
    if (config.check_invariants) {
      if (new_merit_same_tau > old_merit + 1e-8) {
        throw Error(ErrorCode::InvariantViolation, "merit increased at iterate " + std::to_string(n + 1));
      }
      if (next.infeasibility > next.s_norm + 1e-8) {
        throw Error(ErrorCode::InvariantViolation, "infeasibility exceeds slack at iterate " + std::to_string(n + 1));
      }
    }
    trace.records.push_back(std::move(next));
    if (std::abs(old_merit - new_merit_same_tau) < config.eps_merit) {
      trace.termination = PenaltyTermination::SmallMeritChange;
      break;
    }
  }
  return trace;
}

bool check_merit_decrease(const PenaltyTrace& trace) {
  const auto& r = trace.records;
  for (std::size_t n = 0; n + 1 < r.size(); ++n) {
    const double tau = r[n].tau;
    if (r[n + 1].f0 + tau * r[n + 1].s_trace > r[n].f0 + tau * r[n].s_trace + 1e-8) return false;
  }
  return true;
}

bool replay_penalty_updates(const PenaltyTrace& trace) {
  const auto& r = trace.records;
  for (std::size_t n = 0; n + 1 < r.size(); ++n) {
    const double expected = next_tau(r[n].tau, r[n + 1].s_norm, trace.mu, trace.kappa, trace.tau_max, trace.e_norm);
    if (r[n + 1].tau != expected) return false;
  }
  return true;
}

std::optional<int> detect_feasible_handoff(const PenaltyTrace& trace, double tol_feas) {
  std::optional<int> m;
  for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
    if (it->s_norm > tol_feas) break;
    m = it->n;
  }
  return m;
}

}  // namespace conedc
