#pragma once

// Dense dictionary-form simplex for   maximize c^T y  s.t.  A y <= b,  y >= 0.
//
// Rows can be appended after a solve; the previous optimal dictionary stays
// dual feasible, so the next solve continues with dual simplex pivots instead
// of starting over. Entering/leaving choices follow Bland's smallest-index
// rule, which rules out cycling.

#include <vector>

#include <Eigen/Dense>

namespace conedc {

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded, PivotLimit };
  Status status = Status::Infeasible;
  Eigen::VectorXd y;
  double value = 0.0;
  int pivots = 0;
};

class DenseSimplex {
 public:
  explicit DenseSimplex(int num_vars);

  /// Sets the objective (maximize c^T y) and discards any warm-start state.
  void set_objective(const Eigen::VectorXd& c);
  /// Appends a^T y <= b.
  void add_row(const Eigen::VectorXd& a, double b);

  LpSolution solve(int max_pivots = 200000);

  int num_vars() const { return n_; }
  int num_rows() const { return static_cast<int>(rows_b_.size()); }

 private:
  double& at(int row, int col) { return tab_[static_cast<std::size_t>(row) * (n_ + 1) + col]; }
  double at(int row, int col) const { return tab_[static_cast<std::size_t>(row) * (n_ + 1) + col]; }
  double& rhs(int row) { return at(row, n_); }

  void cold_start();
  void append_tableau_row(const Eigen::VectorXd& a, double b);
  void reset_objective_row();
  void pivot(int row, int col);
  LpSolution::Status run_dual(int max_pivots, int& pivots);
  LpSolution::Status run_primal(int max_pivots, int& pivots);
  bool dual_feasible() const;
  bool primal_feasible() const;
  Eigen::VectorXd extract() const;
  double max_violation(const Eigen::VectorXd& y) const;
  LpSolution solve_once(int max_pivots);

  int n_;
  Eigen::VectorXd c_;
  std::vector<Eigen::VectorXd> rows_a_;
  std::vector<double> rows_b_;

  // Dictionary: basic var of row i equals tab(i, n) - sum_k tab(i, k) * nonbasic_k.
  std::vector<double> tab_;
  std::vector<double> obj_;  // z = obj_[n] + sum_k obj_[k] * nonbasic_k
  std::vector<int> basis_;
  std::vector<int> nonbasis_;
  bool fresh_ = true;
};

}  // namespace conedc
