#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "suite.hpp"

#include "conedc/convex_inner.hpp"
#include "conedc/error.hpp"
#include "conedc/penalty_ccp.hpp"
#include "conedc/problem_library.hpp"

using namespace conedc;

namespace {

Vec v1(double x) { return Vec::Constant(1, x); }

PenaltyConfig reference_config() {
  PenaltyConfig c;
  c.tau0 = 1.0;
  c.mu = 2.0;
  c.kappa = 1e-6;
  c.tau_max = 1024.0;
  return c;
}

// Penalized subproblem of the scalar example at base z, minimized by grid search.
double penalized_minimizer(double z, double tau) {
  const auto phi = [&](double x) {
    const double q = x * x - 4.0 * z * z * z * x + 3.0 * z * z * z * z;
    return (x - 0.5) * (x - 0.5) + tau * std::max(0.0, q);
  };
  return oracle::minimize_scalar(phi, -10.0, 10.0, 200000).first;
}

}  // namespace

TEST_CASE("scalar example with the reference parameters") {
  const PenaltyTrace t = run_penalty_ccp(example29(), v1(-1.0), reference_config());
  REQUIRE(t.records.size() >= 2);
  CHECK(t.records[1].x(0) == doctest::Approx(-0.75).epsilon(1e-4));
  CHECK(std::abs(t.records.back().x(0)) <= 0.01);
  CHECK(t.termination != PenaltyTermination::MaxIter);
  CHECK(check_merit_decrease(t));
  CHECK(replay_penalty_updates(t));
  // s_0 is the positive part of F(x0) = 0.
  CHECK(t.records[0].s_norm == 0.0);
  CHECK(t.records[0].merit == doctest::Approx(2.25));
  // tau is capped: mu * tau <= tau_max.
  for (const PenaltyRecord& r : t.records) CHECK(r.tau <= 1024.0);
}

TEST_CASE("scalar example with kappa = 0 approaches 0") {
  PenaltyConfig c = reference_config();
  c.kappa = 0.0;
  c.tau_max = 1e9;
  const PenaltyTrace t = run_penalty_ccp(example29(), v1(-1.0), c);
  CHECK(std::abs(t.records.back().x(0)) <= 1e-3);
  CHECK(check_merit_decrease(t));
  CHECK(replay_penalty_updates(t));
  // Each iterate is the penalized minimizer at the previous one.
  for (std::size_t n = 1; n < std::min<std::size_t>(t.records.size(), 12); ++n) {
    const double ref = penalized_minimizer(t.records[n - 1].x(0), t.records[n - 1].tau);
    CHECK(t.records[n].x(0) == doctest::Approx(ref).epsilon(1e-6));
  }
  const std::optional<int> m = detect_feasible_handoff(t, 1e-8);
  REQUIRE(m);
  for (std::size_t n = *m; n < t.records.size(); ++n) CHECK(t.records[n].infeasibility <= 1e-8);
}

TEST_CASE("tau0 at the threshold stops after one subproblem") {
  PenaltyConfig c = reference_config();
  c.tau0 = 1.5;
  const PenaltyTrace t = run_penalty_ccp(example29(), v1(-1.0), c);
  CHECK(t.subproblems == 1);
  CHECK(t.termination == PenaltyTermination::FixedPoint);
  CHECK(std::abs(t.last_solution(0) + 1.0) <= 1e-6);
}

TEST_CASE("merit decrease check") {
  const PenaltyTrace t = run_penalty_ccp(example29(), v1(-1.0), reference_config());
  PenaltyTrace single = t;
  single.records.erase(single.records.begin() + 1, single.records.end());
  CHECK(check_merit_decrease(single));

  PenaltyTrace corrupted = t;
  REQUIRE(corrupted.records.size() >= 3);
  corrupted.records[2].f0 += 10.0;
  CHECK_FALSE(check_merit_decrease(corrupted));
}

TEST_CASE("penalty update rule") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(next_tau(1.0, 0.5, 2.0, 1e-6, 1024.0, 1.0) == 2.0);
  CHECK(next_tau(1.0, 1e-7, 2.0, 1e-6, 1024.0, 1.0) == 1.0);   // slack below kappa
  CHECK(next_tau(512.0, 0.5, 2.0, 1e-6, 1024.0, 1.0) == 1024.0);
  CHECK(next_tau(1024.0, 0.5, 2.0, 1e-6, 1024.0, 1.0) == 1024.0);  // cap reached
  CHECK(next_tau(1.0, 0.0, 2.0, 0.0, inf, 1.0) == 2.0);        // kappa = 0 always grows
  CHECK(next_tau(1.0, 0.5, 2.0, 1e-6, 3.0, 2.0) == 1.0);       // |t| = tau |e|
  CHECK(next_tau(1.0, 0.5, 2.0, 1e-6, 4.0, 2.0) == 2.0);

  const PenaltyTrace t = run_penalty_ccp(example29(), v1(-1.0), reference_config());
  CHECK(replay_penalty_updates(t));
  PenaltyTrace corrupted = t;
  REQUIRE(corrupted.records.size() >= 3);
  corrupted.records[2].tau = std::nextafter(corrupted.records[2].tau, inf);
  CHECK_FALSE(replay_penalty_updates(corrupted));

  // tau never decreases and never exceeds max(tau0, tau_max).
  for (std::size_t n = 1; n < t.records.size(); ++n) {
    CHECK(t.records[n].tau >= t.records[n - 1].tau);
    CHECK(t.records[n].tau <= 1024.0);
  }
}

TEST_CASE("feasible handoff") {
  // Feasible start above the threshold: feasible from the first record.
  PenaltyConfig c = reference_config();
  c.tau0 = 2.0;
  const PenaltyTrace t = run_penalty_ccp(example29(), v1(-1.0), c);
  const std::optional<int> m = detect_feasible_handoff(t, 1e-8);
  REQUIRE(m);
  CHECK(*m <= 1);

  PenaltyTrace synthetic = t;
  for (PenaltyRecord& r : synthetic.records) r.s_norm = 1.0;
  CHECK_FALSE(detect_feasible_handoff(synthetic, 1e-8));

  // From x0 = 3 with kappa = 0 and no cap the iterates reach [1, inf) and stay
  // feasible; the tail behaves like plain CCP.
  PenaltyConfig d = reference_config();
  d.kappa = 0.0;
  d.tau_max = std::numeric_limits<double>::infinity();
  const PenaltyTrace u = run_penalty_ccp(example29(), v1(3.0), d);
  CHECK(u.termination != PenaltyTermination::MaxIter);
  CHECK(std::isfinite(u.records.back().tau));
  const std::optional<int> mu = detect_feasible_handoff(u, 1e-8);
  REQUIRE(mu);
  for (std::size_t n = *mu; n < u.records.size(); ++n) {
    CHECK(u.records[n].infeasibility <= 1e-7);
    if (n > static_cast<std::size_t>(*mu)) CHECK(u.records[n].f0 < u.records[n - 1].f0 + 1e-10);
  }
  CHECK(std::abs(u.records.back().x(0) - 1.0) <= 1e-4);
}

TEST_CASE("exact penalty above the subproblem multiplier") {
  // For z <= -1 the constrained minimizer is the right root R(z) of
  // x^2 - 4z^3 x + 3z^4 with multiplier 2(0.5 - R) / (2R - 4z^3).
  const ProblemInstance p = example29();
  for (double z = -2.0; z <= -1.0 + 1e-12; z += 0.125) {
    const double c = 2.0 * z * z * z;
    const double R = c + std::sqrt(4.0 * std::pow(z, 6) - 3.0 * std::pow(z, 4));
    const double lambda = 2.0 * (0.5 - R) / (2.0 * R - 4.0 * z * z * z);
    if (z == -1.0) CHECK(lambda == doctest::Approx(1.5));
    const SubproblemSpec s = build_penalized(p, v1(z), v1(0.0), lambda + 0.25);
    const SolveReport r = solve_convex(s);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.x_hat(0) == doctest::Approx(R).epsilon(1e-6));
    CHECK(recover_slack(s, r.x_hat).norm() <= 1e-6);
    // Below the multiplier the slack is positive.
    const SubproblemSpec below = build_penalized(p, v1(z), v1(0.0), 0.5 * lambda);
    CHECK(recover_slack(below, solve_convex(below).x_hat).norm() > 1e-6);
  }
}

TEST_CASE("Stiefel 1x1 from 0.3") {
  const ProblemInstance p = builtin("stiefel_1x1");
  const PenaltyTrace t = run_penalty_ccp(p, v1(0.3));
  CHECK(std::abs(t.records.back().x(0) - 1.0) <= 1e-3);
  CHECK(check_merit_decrease(t));
}

TEST_CASE("starts outside the box are rejected") {
  CHECK_THROWS_AS(run_penalty_ccp(example29(), v1(-11.0)), Error);
  PenaltyConfig c;
  c.tau0 = 0.0;
  CHECK_THROWS_AS(run_penalty_ccp(example29(), v1(-1.0), c), Error);
  c.tau0 = 1.0;
  c.mu = 1.0;
  CHECK_THROWS_AS(run_penalty_ccp(example29(), v1(-1.0), c), Error);
}

TEST_CASE("property: merit, slack link and replay over the library") {
  suite::InvariantReport rep;
  std::mt19937_64 rng(3);
  for (const std::string& name : builtin_names()) {
    const ProblemInstance p = builtin(name);
    for (int s = 0; s < 3; ++s) suite::check_penalty(p, p.feasible_set.sample_box(rng), 100, rep, name);
  }
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ProblemInstance p = random_quadratic_sdp(s, 2 + s % 3, 2 + s % 2);
    suite::check_penalty(p, p.feasible_set.sample_box(rng), 200, rep, p.name);
  }
  for (const std::string& f : rep.failures) MESSAGE(f);
  CHECK(rep.merit);
  CHECK(rep.slack_link);
  CHECK(rep.replay);
}
