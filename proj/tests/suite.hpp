#pragma once

// Invariant sweep over the problem library, shared by the unit tests and the
// acceptance binary.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "conedc/ccp.hpp"
#include "conedc/certificates.hpp"
#include "conedc/penalty_ccp.hpp"
#include "conedc/problem_library.hpp"

namespace suite {

using namespace conedc;

/// A feasible start drawn from the seed: |x| >= 1 for the scalar example, a
/// random orthonormal X for Stiefel, the generator's point for quadratic SDPs.
inline Vec feasible_start(const ProblemInstance& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (p.name == "example29") {
    const double r = uniform(rng, 1.0, 10.0);
    return Vec::Constant(1, seed % 2 ? -r : r);
  }
  if (p.name.rfind("stiefel", 0) == 0) {
    const int l = p.constraint.cone.blocks()[0].size;
    const int m = p.dim() / l;
    Mat A(m, l);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < l; ++j) A(i, j) = standard_normal(rng);
    }
    const Mat Q = Eigen::HouseholderQR<Mat>(A).householderQ() * Mat::Identity(m, l);
    return Eigen::Map<const Vec>(Q.data(), m * l);
  }
  return *p.known_facts->strictly_feasible_point;
}

struct InvariantReport {
  int ccp_runs = 0;
  int penalty_runs = 0;
  double worst_ccp_infeasibility = 0.0;
  bool feasibility = true;
  bool descent = true;
  bool strong_descent = true;
  bool merit = true;
  bool slack_link = true;
  bool replay = true;
  bool fixed_point_critical = true;
  std::vector<std::string> failures;

  bool ok() const { return feasibility && descent && strong_descent && merit && slack_link && replay && fixed_point_critical; }
};

inline void check_ccp(const ProblemInstance& p, const Vec& x0, InvariantReport& rep, const std::string& tag) {
  CcpConfig cfg;
  const IterationTrace t = run_ccp(p, x0, cfg);
  ++rep.ccp_runs;
  const auto& r = t.records;
  for (std::size_t n = 1; n < r.size(); ++n) {
    rep.worst_ccp_infeasibility = std::max(rep.worst_ccp_infeasibility, r[n].infeasibility);
    if (r[n].infeasibility > 1e-7) {
      rep.feasibility = false;
      rep.failures.push_back(tag + ": infeasible iterate " + std::to_string(n));
    }
    // Strict descent before the terminating step; no increase beyond 1e-10 on it.
    const bool last = n + 1 == r.size();
    const bool ok = last ? r[n].f0 <= r[n - 1].f0 + 1e-10 : r[n].f0 < r[n - 1].f0 - 1e-10;
    if (!ok) {
      rep.descent = false;
      rep.failures.push_back(tag + ": descent at " + std::to_string(n));
    }
  }
  if (t.termination == CcpTermination::CriticalFixedPoint) {
    const CcpRecord& last = r.back();
    const double res = criticality_residual(p, last.x, p.objective.h.subgradient(last.x));
    if (res > 1e-6) {
      rep.fixed_point_critical = false;
      rep.failures.push_back(tag + ": fixed point residual " + std::to_string(res));
    }
  }
}

inline void check_strong(const ProblemInstance& base, const Vec& x0, InvariantReport& rep, const std::string& tag) {
  ProblemInstance p = base;
  p.objective = p.objective.regularized(1.0);
  const IterationTrace t = run_ccp(p, x0);
  if (!check_strong_descent(t, 1.0)) {
    rep.strong_descent = false;
    rep.failures.push_back(tag + ": strong descent");
  }
}

inline void check_penalty(const ProblemInstance& p, const Vec& x0, int max_iter, InvariantReport& rep,
                          const std::string& tag) {
  PenaltyConfig cfg;
  cfg.max_iter = max_iter;
  const PenaltyTrace t = run_penalty_ccp(p, x0, cfg);
  ++rep.penalty_runs;
  if (!check_merit_decrease(t)) {
    rep.merit = false;
    rep.failures.push_back(tag + ": merit");
  }
  if (!replay_penalty_updates(t)) {
    rep.replay = false;
    rep.failures.push_back(tag + ": replay");
  }
  for (std::size_t n = 1; n < t.records.size(); ++n) {
    if (t.records[n].infeasibility > t.records[n].s_norm + 1e-8) {
      rep.slack_link = false;
      rep.failures.push_back(tag + ": slack link at " + std::to_string(n));
    }
  }
}

/// Every builtin plus one random quadratic SDP per seed; CCP from a feasible
/// start, the mu = 1 regularized split, and Penalty CCP from a random box point.
inline InvariantReport run_invariant_suite(int seeds = 20, int penalty_max_iter = 200) {
  InvariantReport rep;
  std::vector<ProblemInstance> library;
  for (const std::string& name : builtin_names()) library.push_back(builtin(name));
  for (int s = 0; s < seeds; ++s) {
    std::vector<ProblemInstance> set = library;
    set.push_back(random_quadratic_sdp(1000 + s, 2 + s % 3, 2 + s % 2));
    for (const ProblemInstance& p : set) {
      const std::string tag = p.name + "/seed " + std::to_string(s);
      const Vec x0 = feasible_start(p, s);
      check_ccp(p, x0, rep, tag);
      check_strong(p, x0, rep, tag);
      std::mt19937_64 rng(77 + s);
      check_penalty(p, p.feasible_set.sample_box(rng), penalty_max_iter, rep, tag);
    }
  }
  return rep;
}

}  // namespace suite
