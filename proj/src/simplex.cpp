#include "conedc/simplex.hpp"

#include <cmath>
#include <limits>

#include "conedc/error.hpp"

namespace conedc {

namespace {

constexpr double kFeasEps = 1e-10;
constexpr double kPivotEps = 1e-11;

}  // namespace

DenseSimplex::DenseSimplex(int num_vars) : n_(num_vars), c_(Eigen::VectorXd::Zero(num_vars)) {
  if (num_vars < 1) throw Error(ErrorCode::InvalidArgument, "LP needs at least one variable");
  cold_start();
}

void DenseSimplex::set_objective(const Eigen::VectorXd& c) {
  if (c.size() != n_) throw Error(ErrorCode::InvalidArgument, "objective length mismatch");
  c_ = c;
  fresh_ = true;
}

void DenseSimplex::add_row(const Eigen::VectorXd& a, double b) {
  if (a.size() != n_) throw Error(ErrorCode::InvalidArgument, "row length mismatch");
  if (!a.allFinite() || !std::isfinite(b)) throw Error(ErrorCode::InvalidArgument, "non-finite LP row");
  rows_a_.push_back(a);
  rows_b_.push_back(b);
  if (!fresh_) append_tableau_row(a, b);
}

void DenseSimplex::cold_start() {
  const int m = num_rows();
  tab_.assign(static_cast<std::size_t>(m) * (n_ + 1), 0.0);
  basis_.resize(m);
  nonbasis_.resize(n_);
  for (int j = 0; j < n_; ++j) nonbasis_[j] = j;
  for (int i = 0; i < m; ++i) {
    basis_[i] = n_ + i;
    for (int j = 0; j < n_; ++j) at(i, j) = rows_a_[i](j);
    rhs(i) = rows_b_[i];
  }
  obj_.assign(n_ + 1, 0.0);
  for (int j = 0; j < n_; ++j) obj_[j] = c_(j);
  fresh_ = false;
}

void DenseSimplex::append_tableau_row(const Eigen::VectorXd& a, double b) {
  // Express the new slack in the current nonbasic variables.
  std::vector<double> row(n_ + 1, 0.0);
  row[n_] = b;
  const int m = static_cast<int>(basis_.size());
  for (int k = 0; k < n_; ++k) {
    if (nonbasis_[k] < n_) row[k] += a(nonbasis_[k]);
  }
  for (int i = 0; i < m; ++i) {
    const int var = basis_[i];
    if (var >= n_ || a(var) == 0.0) continue;
    const double coef = a(var);
    for (int k = 0; k < n_; ++k) row[k] -= coef * at(i, k);
    row[n_] -= coef * at(i, n_);
  }
  tab_.insert(tab_.end(), row.begin(), row.end());
  basis_.push_back(n_ + static_cast<int>(rows_b_.size()) - 1);
}

void DenseSimplex::reset_objective_row() {
  obj_.assign(n_ + 1, 0.0);
  for (int k = 0; k < n_; ++k) {
    if (nonbasis_[k] < n_) obj_[k] = c_(nonbasis_[k]);
  }
  for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
    const int var = basis_[i];
    if (var >= n_ || c_(var) == 0.0) continue;
    for (int k = 0; k < n_; ++k) obj_[k] -= c_(var) * at(i, k);
    obj_[n_] += c_(var) * at(i, n_);
  }
}

void DenseSimplex::pivot(int r, int c) {
  const double p = at(r, c);
  const int m = static_cast<int>(basis_.size());
  for (int k = 0; k <= n_; ++k) {
    if (k != c) at(r, k) /= p;
  }
  at(r, c) = 1.0 / p;
  for (int i = 0; i < m; ++i) {
    if (i == r) continue;
    const double f = at(i, c);
    if (f == 0.0) continue;
    for (int k = 0; k <= n_; ++k) {
      if (k != c) at(i, k) -= f * at(r, k);
    }
    at(i, c) = -f * at(r, c);
  }
  const double f = obj_[c];
  if (f != 0.0) {
    for (int k = 0; k < n_; ++k) {
      if (k != c) obj_[k] -= f * at(r, k);
    }
    obj_[n_] += f * at(r, n_);
    obj_[c] = -f * at(r, c);
  }
  std::swap(basis_[r], nonbasis_[c]);
}

bool DenseSimplex::dual_feasible() const {
  for (int k = 0; k < n_; ++k) {
    if (obj_[k] > kFeasEps) return false;
  }
  return true;
}

bool DenseSimplex::primal_feasible() const {
  for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
    if (at(i, n_) < -kFeasEps) return false;
  }
  return true;
}

LpSolution::Status DenseSimplex::run_dual(int max_pivots, int& pivots) {
  const int m = static_cast<int>(basis_.size());
  while (true) {
    int r = -1;
    for (int i = 0; i < m; ++i) {
      if (at(i, n_) < -kFeasEps && (r < 0 || basis_[i] < basis_[r])) r = i;
    }
    if (r < 0) return LpSolution::Status::Optimal;
    int c = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_; ++k) {
      const double t = at(r, k);
      if (t >= -kPivotEps) continue;
      const double ratio = std::min(obj_[k], 0.0) / t;
      if (c < 0 || ratio < best - 1e-12) {
        best = ratio;
        c = k;
      } else if (ratio <= best + 1e-12 && nonbasis_[k] < nonbasis_[c]) {
        c = k;
      }
    }
    if (c < 0) return LpSolution::Status::Infeasible;
    if (pivots >= max_pivots) return LpSolution::Status::PivotLimit;
    pivot(r, c);
    ++pivots;
  }
}

LpSolution::Status DenseSimplex::run_primal(int max_pivots, int& pivots) {
  const int m = static_cast<int>(basis_.size());
  while (true) {
    int c = -1;
    for (int k = 0; k < n_; ++k) {
      if (obj_[k] > kFeasEps && (c < 0 || nonbasis_[k] < nonbasis_[c])) c = k;
    }
    if (c < 0) return LpSolution::Status::Optimal;
    int r = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double t = at(i, c);
      if (t <= kPivotEps) continue;
      const double ratio = std::max(at(i, n_), 0.0) / t;
      if (r < 0 || ratio < best - 1e-12) {
        best = ratio;
        r = i;
      } else if (ratio <= best + 1e-12 && basis_[i] < basis_[r]) {
        r = i;
      }
    }
    if (r < 0) return LpSolution::Status::Unbounded;
    if (pivots >= max_pivots) return LpSolution::Status::PivotLimit;
    pivot(r, c);
    ++pivots;
  }
}

Eigen::VectorXd DenseSimplex::extract() const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
  for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
    if (basis_[i] < n_) y(basis_[i]) = std::max(at(i, n_), 0.0);
  }
  return y;
}

double DenseSimplex::max_violation(const Eigen::VectorXd& y) const {
  double v = 0.0;
  for (std::size_t i = 0; i < rows_b_.size(); ++i) {
    v = std::max(v, (rows_a_[i].dot(y) - rows_b_[i]) / (1.0 + std::abs(rows_b_[i])));
  }
  return v;
}

LpSolution DenseSimplex::solve_once(int max_pivots) {
  if (fresh_) cold_start();
  LpSolution out;
  int pivots = 0;
  LpSolution::Status st;
  if (dual_feasible()) {
    st = run_dual(max_pivots, pivots);
  } else if (primal_feasible()) {
    st = run_primal(max_pivots, pivots);
  } else {
    // Phase 1: reach primal feasibility under a zero objective, then optimize.
    const Eigen::VectorXd c = c_;
    c_.setZero();
    reset_objective_row();
    st = run_dual(max_pivots, pivots);
    c_ = c;
    reset_objective_row();
    if (st == LpSolution::Status::Optimal) st = run_primal(max_pivots, pivots);
  }
  out.status = st;
  out.pivots = pivots;
  if (st == LpSolution::Status::Optimal) {
    out.y = extract();
    out.value = c_.dot(out.y);
  }
  return out;
}

LpSolution DenseSimplex::solve(int max_pivots) {
  LpSolution sol = solve_once(max_pivots);
  if (sol.status == LpSolution::Status::Optimal && max_violation(sol.y) > 1e-7) {
    // Accumulated round-off from warm starts: refactor from the original rows.
    fresh_ = true;
    sol = solve_once(max_pivots);
  }
  return sol;
}

}  // namespace conedc
