#include "conedc/convex_inner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conedc/error.hpp"
#include "conedc/simplex.hpp"

namespace conedc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool converged(double ub, double lb, double tol) { return ub - lb <= tol * std::max(1.0, std::abs(ub)); }

// ---------------------------------------------------------------- d = 1

struct Min1d {
  double x;
  double value;
  double lb;
};

double narrow_enough(double a, double b) { return b - a <= 1e-15 * (1.0 + std::abs(a) + std::abs(b)); }

Min1d minimize_1d(const ConvexOracle& f, double lo, double hi) {
  const auto val = [&](double t) { return f.value(Vec::Constant(1, t)); };
  const auto der = [&](double t) { return f.subgradient(Vec::Constant(1, t))(0); };
  double a = lo;
  double fa = val(a);
  if (lo == hi) return {a, fa, fa};
  double ga = der(a);
  if (ga >= 0.0) return {a, fa, fa};
  double b = hi;
  double fb = val(b);
  double gb = der(b);
  if (gb <= 0.0) return {b, fb, fb};
  for (int it = 0; it < 200 && !narrow_enough(a, b); ++it) {
    const double m = 0.5 * (a + b);
    const double fm = val(m);
    const double gm = der(m);
    if (gm == 0.0) return {m, fm, fm};
    if (gm > 0.0) {
      b = m, fb = fm, gb = gm;
    } else {
      a = m, fa = fm, ga = gm;
    }
  }
  // The tangents at a and b meet above the minimum of f on [a, b].
  const double t = std::clamp((fb - fa + ga * a - gb * b) / (ga - gb), a, b);
  const double lb = std::min({fa + ga * (t - a), fa, fb});
  return fa <= fb ? Min1d{a, fa, lb} : Min1d{b, fb, lb};
}

// Largest/smallest point of {c <= 0} between a point with c > 0 and a feasible one.
double boundary_1d(const ConvexOracle& c, double infeasible, double feasible) {
  const auto val = [&](double t) { return c.value(Vec::Constant(1, t)); };
  for (int it = 0; it < 200; ++it) {
    const double lo = std::min(infeasible, feasible);
    const double hi = std::max(infeasible, feasible);
    if (narrow_enough(lo, hi)) break;
    const double m = 0.5 * (infeasible + feasible);
    (val(m) <= 0.0 ? feasible : infeasible) = m;
  }
  return feasible;
}

SolveReport solve_1d(const ConvexOracle& f, const std::optional<ConvexOracle>& c, const FeasibleSet& set,
                     const InnerOptions& opts) {
  double lo = set.lo()(0);
  double hi = set.hi()(0);
  for (const auto& h : set.affine()) {
    const double a = h.a(0);
    if (a > 0.0) hi = std::min(hi, h.b / a);
    if (a < 0.0) lo = std::max(lo, h.b / a);
  }
  if (lo > hi) lo = hi = std::clamp(0.5 * (lo + hi), set.lo()(0), set.hi()(0));

  SolveReport rep;
  double L = lo;
  double R = hi;
  if (c) {
    const Min1d cm = minimize_1d(*c, lo, hi);
    if (cm.value > opts.tol_feas) {
      rep.x_hat = Vec::Constant(1, cm.x);
      rep.objective_value = f.value(rep.x_hat);
      rep.constraint_violation = cm.value;
      rep.infeasibility_certificate = cm.lb;
      rep.status = cm.lb > opts.tol_feas ? SolveStatus::Infeasible : SolveStatus::IterLimit;
      return rep;
    }
    if (cm.value > 0.0) {
      L = R = cm.x;
    } else {
      const auto cval = [&](double t) { return c->value(Vec::Constant(1, t)); };
      L = cval(lo) <= 0.0 ? lo : boundary_1d(*c, lo, cm.x);
      R = cval(hi) <= 0.0 ? hi : boundary_1d(*c, hi, cm.x);
    }
  }
  const Min1d om = minimize_1d(f, L, R);
  rep.x_hat = Vec::Constant(1, om.x);
  rep.objective_value = om.value;
  rep.constraint_violation = c ? std::max(0.0, c->value(rep.x_hat)) : 0.0;
  rep.gap_bound = om.value - om.lb;
  rep.status = converged(om.value, om.lb, opts.tol) ? SolveStatus::Optimal : SolveStatus::IterLimit;
  return rep;
}

// ---------------------------------------------------------------- Kelley

// Master LP in y = x - lo >= 0 and w >= 0, where the epigraph variable is
// t = level + w. Maximizing -w keeps the all-slack start dual feasible.
class Master {
 public:
  Master(const FeasibleSet& set, double level) : lp_(set.dim() + 1), lo_(set.lo()), level_(level), d_(set.dim()) {
    Vec obj = Vec::Zero(d_ + 1);
    obj(d_) = -1.0;
    lp_.set_objective(obj);
    for (int i = 0; i < d_; ++i) {
      Vec row = Vec::Zero(d_ + 1);
      row(i) = 1.0;
      lp_.add_row(row, set.hi()(i) - set.lo()(i));
    }
    for (const auto& h : set.affine()) {
      Vec row = Vec::Zero(d_ + 1);
      row.head(d_) = h.a;
      lp_.add_row(row, h.b - h.a.dot(lo_));
    }
  }

  // value + g.(x' - x) <= level + w_coef * w  at x' = lo + y.
  void add_cut(double value, const Vec& g, const Vec& x, double w_coef) {
    Vec row(d_ + 1);
    row.head(d_) = g;
    row(d_) = -w_coef;
    double rhs = level_ * w_coef - value - g.dot(lo_ - x);
    lp_.add_row(row, rhs);
  }

  LpSolution solve() { return lp_.solve(); }
  Vec point(const LpSolution& sol) const { return lo_ + sol.y.head(d_); }
  double bound(const LpSolution& sol) const { return level_ - sol.value; }

 private:
  DenseSimplex lp_;
  Vec lo_;
  double level_;
  int d_;
};

double cut_min_over_box(double value, const Vec& g, const Vec& x, const FeasibleSet& set) {
  double v = value;
  for (int i = 0; i < g.size(); ++i) v += std::min(g(i) * (set.lo()(i) - x(i)), g(i) * (set.hi()(i) - x(i)));
  return v;
}

struct Cut {
  double value;
  Vec g;
  Vec x;
};

// Certified lower bound on min_A c from the constraint cuts collected so far.
double constraint_cut_bound(const std::vector<Cut>& cuts, const FeasibleSet& set) {
  const double level = cut_min_over_box(cuts[0].value, cuts[0].g, cuts[0].x, set);
  Master m(set, level);
  for (const auto& c : cuts) m.add_cut(c.value, c.g, c.x, 1.0);
  const LpSolution sol = m.solve();
  if (sol.status != LpSolution::Status::Optimal) return -kInf;
  return m.bound(sol);
}

SolveReport kelley(const ConvexOracle& f, const std::optional<ConvexOracle>& c, const FeasibleSet& set,
                   const InnerOptions& opts) {
  const double contain_tol = 1e-7;
  Vec x = opts.start && set.contains(*opts.start) ? *opts.start : set.center();
  SolveReport rep;
  std::optional<Master> master;
  std::vector<Cut> ccuts;
  double ub = kInf;
  double lb = -kInf;
  Vec best;
  for (int it = 0; it < opts.max_cuts; ++it) {
    rep.iterations = it + 1;
    const double fx = f.value(x);
    const Vec gx = f.subgradient(x);
    double cx = -kInf;
    Vec ax;
    if (c) {
      cx = c->value(x);
      ax = c->subgradient(x);
    }
    if (set.contains(x, contain_tol) && cx <= opts.tol_feas && fx < ub) {
      ub = fx;
      best = x;
    }
    if (!master) master.emplace(set, cut_min_over_box(fx, gx, x, set));
    master->add_cut(fx, gx, x, 1.0);
    if (c && (cx > 0.0 || ax.squaredNorm() > 0.0)) {
      master->add_cut(cx, ax, x, 0.0);
      ccuts.push_back({cx, ax, x});
    }
    const LpSolution sol = master->solve();
    if (sol.status == LpSolution::Status::Infeasible) {
      if (!c) throw Error(ErrorCode::InvalidFeasibleSet, "cutting-plane master infeasible without constraints");
      // The constraint cuts alone exclude A. Minimize c to certify or recover a point.
      const double r = constraint_cut_bound(ccuts, set);
      InnerOptions sub = opts;
      sub.max_cuts = std::max(1, opts.max_cuts - it);
      const SolveReport phase = kelley(*c, std::nullopt, set, sub);
      const double clb = std::max(r, phase.objective_value - phase.gap_bound);
      if (clb > opts.tol_feas) {
        rep.x_hat = phase.x_hat;
        rep.objective_value = f.value(phase.x_hat);
        rep.constraint_violation = phase.objective_value;
        rep.infeasibility_certificate = clb;
        rep.status = SolveStatus::Infeasible;
        return rep;
      }
      if (phase.objective_value <= opts.tol_feas && f.value(phase.x_hat) < ub) {
        ub = f.value(phase.x_hat);
        best = phase.x_hat;
      }
      break;
    }
    if (sol.status != LpSolution::Status::Optimal) break;
    const double lb_new = master->bound(sol);
    if (lb_new < lb - 1e-9 * (1.0 + std::abs(lb))) rep.lower_bound_monotone = false;
    lb = std::max(lb, lb_new);
    if (ub < kInf && converged(ub, lb, opts.tol)) {
      rep.status = SolveStatus::Optimal;
      break;
    }
    x = master->point(sol);
  }
  rep.x_hat = best.size() ? best : x;
  rep.objective_value = f.value(rep.x_hat);
  rep.constraint_violation = c ? std::max(0.0, c->value(rep.x_hat)) : 0.0;
  rep.gap_bound = lb > -kInf ? rep.objective_value - lb : kInf;
  return rep;
}

void check_dims(const FeasibleSet& set) {
  if (set.dim() < 1) throw Error(ErrorCode::InvalidArgument, "empty dimension");
}

}  // namespace

SolveReport minimize_convex(const ConvexOracle& objective, const std::optional<ConvexOracle>& constraint,
                            const FeasibleSet& set, const InnerOptions& opts) {
  check_dims(set);
  if (set.dim() == 1 && opts.use_1d_specialization) return solve_1d(objective, constraint, set, opts);
  return kelley(objective, constraint, set, opts);
}

SolveReport minimize_convex_kelley(const ConvexOracle& objective, const std::optional<ConvexOracle>& constraint,
                                   const FeasibleSet& set, const InnerOptions& opts) {
  check_dims(set);
  return kelley(objective, constraint, set, opts);
}

SolveReport solve_convex(const SubproblemSpec& spec, const InnerOptions& opts) {
  InnerOptions o = opts;
  if (!o.start) o.start = spec.base;
  return minimize_convex(spec.objective, spec.constraint, spec.feasible_set, o);
}

SlaterResult slater_probe(const LinearizedConstraint& lin, const FeasibleSet& set, double tol, const InnerOptions& opts) {
  const SolveReport rep = minimize_convex(lin.scalarized_oracle(), std::nullopt, set, opts);
  SlaterResult out;
  out.x = rep.x_hat;
  out.min_value = rep.objective_value;
  out.lower_bound = rep.objective_value - rep.gap_bound;
  out.holds = rep.objective_value < -tol;
  return out;
}

}  // namespace conedc
