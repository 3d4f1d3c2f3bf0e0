// Acceptance checks: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "suite.hpp"

#include "conedc/ccp.hpp"
#include "conedc/certificates.hpp"
#include "conedc/convex_inner.hpp"
#include "conedc/dc_calculus.hpp"
#include "conedc/penalty_ccp.hpp"
#include "conedc/problem_library.hpp"

using namespace conedc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Vec v1(double x) { return Vec::Constant(1, x); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

PenaltyConfig penalty_config(double tau0, double kappa, double tau_max) {
  PenaltyConfig c;
  c.tau0 = tau0;
  c.mu = 2.0;
  c.kappa = kappa;
  c.tau_max = tau_max;
  return c;
}

void criterion1() {
  const auto t0 = Clock::now();
  const PenaltyTrace t = run_penalty_ccp(example29(), v1(-1.0), penalty_config(1.0, 1e-6, 1024.0));
  const double secs = seconds_since(t0);
  const double x1 = t.records.size() > 1 ? t.records[1].x(0) : NAN;
  const double xs = t.records.back().x(0);
  const bool ok = std::abs(x1 + 0.75) <= 1e-4 && std::abs(xs) <= 0.01 && secs < 2.0;
  report(1, ok, fmt("x1 = %.6f, x* = %.3g, %.3f s", x1, xs, secs));
}

void criterion2() {
  const auto t0 = Clock::now();
  const PenaltyTrace t = run_penalty_ccp(example29(), v1(-1.0), penalty_config(1.0, 0.0, 1e9));
  const double secs = seconds_since(t0);
  const double xs = t.records.back().x(0);
  report(2, std::abs(xs) <= 1e-3 && secs < 5.0, fmt("x* = %.3g, %.3f s", xs, secs));
}

void criterion3() {
  const PenaltyTrace t = run_penalty_ccp(example29(), v1(-1.0), penalty_config(1.5, 1e-6, 1024.0));
  const double step = std::abs(t.last_solution(0) + 1.0);
  report(3, t.subproblems == 1 && step <= 1e-6,
         fmt("%g subproblem(s), |x1 - x0| = %.3g", static_cast<double>(t.subproblems), step));
}

void criterion4() {
  const ProblemInstance p = example29();
  bool ok = true;
  std::string detail;

  const IterationTrace a = run_ccp(p, v1(-1.0));
  const bool immediate = a.termination == CcpTermination::CriticalFixedPoint && a.records.size() == 1;
  ok &= immediate;

  const IterationTrace b = run_ccp(p, v1(2.0));
  bool monotone = true;
  for (std::size_t n = 1; n < b.records.size(); ++n) monotone &= b.records[n].f0 <= b.records[n - 1].f0;
  const double xb = b.records.back().x(0);
  const int iters = static_cast<int>(b.records.size()) - 1;
  ok &= monotone && std::abs(xb - 1.0) <= 1e-4 && iters <= 50;

  const IterationTrace c = run_ccp(p, v1(0.0));
  bool zero = true;
  for (const CcpRecord& r : c.records) zero &= r.x(0) == 0.0;
  ok &= zero;

  bool sign = true;
  for (double x0 : {-10.0, -4.0, -1.5, -1.0, 1.0, 1.2, 2.0, 5.0, 10.0}) {
    const IterationTrace t = run_ccp(p, v1(x0));
    for (const CcpRecord& r : t.records) sign &= std::signbit(r.x(0)) == std::signbit(x0);
  }
  ok &= sign;
  detail = std::string("x0=-1 ") + (immediate ? "critical at n=0" : "did not stop") +
           fmt("; x0=2 -> %.8f in %g iterations", xb, iters) + (monotone ? " monotone" : " NOT monotone") +
           "; x0=0 " + (zero ? "stays at 0" : "moves") + "; sign " + (sign ? "constant" : "changes");
  report(4, ok, detail);
}

void criterion5() {
  const ProblemInstance p = example29();
  const Vec v = Vec::Zero(1);
  double worst_kkt = 0.0;
  for (const auto& [x, lam] : {std::pair{-1.0, 1.5}, std::pair{1.0, 0.5}}) {
    const KktResidual r = kkt_residual(p, v1(x), v, ConeElement::scalar(lam));
    worst_kkt = std::max({worst_kkt, r.stationarity, r.complementarity, r.dual_feasibility});
  }
  double worst_crit = -INFINITY;
  for (double x : {-1.0, 0.0, 1.0}) worst_crit = std::max(worst_crit, criticality_residual(p, v1(x), v));
  const double at2 = criticality_residual(p, v1(2.0), v);
  report(5, worst_kkt <= 1e-8 && worst_crit <= 1e-8 && at2 >= 0.1,
         fmt("max KKT residual %.3g, max criticality residual %.3g, residual at 2 = %.4f", worst_kkt, worst_crit, at2));
}

void criterion6() {
  std::mt19937_64 rng(6);
  double worst = 0.0;
  bool convex = true;
  bool subgrad = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QuadraticSdpData data = random_quadratic_sdp_data(500 + seed, 2 + seed % 4, 2 + seed % 3);
    const ComponentwiseDcMatrix F = componentwise_from_quadratic(data.F);
    const SmoothMatrixMap direct = quadratic_matrix_map(data.F);
    const ScalarDcFunction dc = lambda_max_dc_decomposition(F);
    const FeasibleSet box(data.lo, data.hi);
    for (int i = 0; i < 100; ++i) {
      const Vec x = box.sample_box(rng);
      const Mat m = direct.value(x);
      const double lmax = Eigen::SelfAdjointEigenSolver<Mat>(m, Eigen::EigenvaluesOnly).eigenvalues()(m.rows() - 1);
      worst = std::max(worst, std::abs(dc.g.value(x) - dc.h.value(x) - lmax));
    }
    convex &= check_midpoint_convexity(dc.g.value, box, 200, seed, 1e-9);
    convex &= check_midpoint_convexity(dc.h.value, box, 200, seed + 100, 1e-9);
    subgrad &= check_subgradient_inequality(dc.g, box, 500, seed);
    subgrad &= check_subgradient_inequality(dc.h, box, 500, seed + 100);
  }
  report(6, worst <= 1e-10 && convex && subgrad,
         fmt("max |g - h - lambda_max| = %.3g over 1000 points", worst) + (convex ? ", midpoint convex" : ", NOT convex") +
             (subgrad ? ", subgradient inequality holds" : ", subgradient inequality FAILS"));
}

void criterion7() {
  bool ok = true;
  std::string detail;
  const ConvexityVerdict w = verify_k_convexity(MapOracle::from(nonconvex_witness()), FeasibleSet::box(1, -2.0, 2.0));
  ok &= !w.passed && w.witness.has_value();
  detail += w.witness ? fmt("witness for the [[1,x^2],[x^2,1]] map (violation %.3g)", w.witness->violation)
                      : std::string("no witness for the [[1,x^2],[x^2,1]] map");

  const int m = 3, l = 2;
  const bool stiefel_ok = verify_k_convexity(MapOracle::from(stiefel_G(m, l)), FeasibleSet::box(m * l, -2.0, 2.0)).passed;
  ok &= stiefel_ok;
  detail += stiefel_ok ? "; Stiefel G passes" : "; Stiefel G FAILS";

  int passed = 0, total = 0;
  std::vector<QuadraticMapData> maps = {example1_quadratic_data()};
  std::vector<std::pair<Vec, Vec>> boxes = {{v1(-2.0), v1(2.0)}};
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const QuadraticSdpData d = random_quadratic_sdp_data(700 + seed, 2 + seed % 3, 2 + seed % 3);
    maps.push_back(d.F);
    boxes.push_back({d.lo, d.hi});
  }
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const SmoothMatrixMap F = quadratic_matrix_map(maps[k]);
    const double M = quadratic_hessian_bound(maps[k].A);
    for (double factor : {1.0, 2.0}) {
      const RegularizedDecomposition dec = regularized_dc_decomposition(F, {M, true}, factor * F.order * M);
      const FeasibleSet box(boxes[k].first, boxes[k].second);
      ++total;
      if (verify_k_convexity(MapOracle::from(dec.map.G), box, {200, k, 1e-9}).passed) ++passed;
    }
  }
  ok &= passed == total;
  detail += fmt("; %g/%g regularized outputs pass", passed, total);

  // Negative control: mu = order * M / 2 on the example-1 data, built without the bound check.
  const QuadraticMapData e1 = example1_quadratic_data();
  const SmoothMatrixMap F1 = quadratic_matrix_map(e1);
  const double mu = 0.5 * F1.order * quadratic_hessian_bound(e1.A);
  const Cone k = Cone::psd(F1.order);
  MapOracle low{k, 1,
                [&, k](const Vec& x) {
                  return ConeElement(k, {F1.value(x) + 0.5 * mu * x.squaredNorm() * Mat::Identity(F1.order, F1.order)});
                },
                {}};
  const ConvexityVerdict neg = verify_k_convexity(low, FeasibleSet::box(1, -2.0, 2.0));
  detail += neg.witness ? "; negative control found a witness"
                        : "; negative control inconclusive-pass (no witness in 200 samples: this G is K-convex)";
  report(7, ok, detail);
}

void criterion8() {
  const auto t0 = Clock::now();
  const suite::InvariantReport rep = suite::run_invariant_suite(20);
  const double secs = seconds_since(t0);
  std::string detail = fmt("%g CCP runs, %g penalty runs, worst CCP infeasibility %.3g", rep.ccp_runs,
                           rep.penalty_runs, rep.worst_ccp_infeasibility);
  detail += fmt(", %.2f s", secs);
  for (std::size_t i = 0; i < std::min<std::size_t>(rep.failures.size(), 5); ++i) detail += "; " + rep.failures[i];
  report(8, rep.ok() && secs < 60.0, detail);
}

void criterion9() {
  std::mt19937_64 rng(9);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int d = 1 + k % 3;
    Mat R(d, d);
    Vec q(d);
    for (int i = 0; i < d; ++i) {
      q(i) = uniform(rng, -3.0, 3.0);
      for (int j = 0; j < d; ++j) R(i, j) = uniform(rng, -1.0, 1.0);
    }
    const Mat P = R * R.transpose() + 0.1 * Mat::Identity(d, d);
    const FeasibleSet box = FeasibleSet::box(d, -1.0, 1.0);
    const Vec ref = oracle::projected_gradient(P, q, box.lo(), box.hi());
    const double ref_val = 0.5 * ref.dot(P * ref) + q.dot(ref);
    const SolveReport r = minimize_convex(ConvexOracle::quadratic(P, q, 0.0), std::nullopt, box);
    worst = std::max(worst, std::abs(r.objective_value - ref_val) / (1.0 + std::abs(ref_val)));
  }

  // Moreau decomposition and slack cost against brute force.
  double moreau = 0.0;
  for (int k = 0; k < 500; ++k) {
    const int n = 2 + k % 3;
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = uniform(rng, -3.0, 3.0);
    }
    const ConeElement y(Cone::psd(n), {m});
    const ConeElement yp = project_pos(y);
    const ConeElement ym = project_pos(-y);
    moreau = std::max({moreau, (y - (yp - ym)).norm() / (1.0 + y.norm()), std::abs(yp.inner(ym)) / (1.0 + y.norm() * y.norm())});
  }
  bool slack_ok = true;
  const double h = 0.02;
  for (int k = 0; k < 4; ++k) {
    const double tau = uniform(rng, 0.5, 2.0);
    const double a0 = uniform(rng, -1.0, 1.0), b0 = uniform(rng, -1.0, 1.0), c0 = uniform(rng, -1.0, 1.0);
    Mat Y(2, 2);
    Y << a0, b0, b0, c0;
    double best = INFINITY;
    for (double a = 0.0; a <= 2.5; a += h) {
      for (double c = 0.0; c <= 2.5; c += h) {
        if (tau * (a + c) >= best) continue;
        for (double b = -2.0; b <= 2.0; b += h) {
          if (oracle::eig2(a, b, c).first < 0.0 || oracle::eig2(a - a0, b - b0, c - c0).first < 0.0) continue;
          best = tau * (a + c);
          break;
        }
      }
    }
    const double cost = slack_cost(tau, ConeElement(Cone::psd(2), {Y})).cost;
    slack_ok &= cost <= best + 1e-12 && best <= cost + 8.0 * tau * h + 1e-12;
  }
  report(9, worst <= 1e-6 && moreau <= 1e-9 && slack_ok,
         fmt("max relative deviation from projected gradient %.3g over 50 quadratics, Moreau residual %.3g", worst,
             moreau) +
             (slack_ok ? ", slack cost matches brute force" : ", slack cost DIFFERS from brute force"));
}

}  // namespace

int main() {
  const std::function<void()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                            criterion6, criterion7, criterion8, criterion9};
  for (int i = 0; i < 9; ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(i + 1, false, std::string("exception: ") + e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
