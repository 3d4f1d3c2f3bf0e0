#include "conedc/subproblem.hpp"

#include <cmath>

#include "conedc/error.hpp"

namespace conedc {

LinearizedConstraint::LinearizedConstraint(const ConeDcMap& map, Vec base)
    : map_(map), base_(std::move(base)), H_base_(map.H.value(base_)), DH_base_(map.H.jacobian(base_)) {
  if (static_cast<int>(DH_base_.size()) != map_.dim) throw Error(ErrorCode::InvalidArgument, "Jacobian size mismatch");
}

ConeElement LinearizedConstraint::value(const Vec& x) const {
  ConeElement y = map_.G.value(x) - H_base_;
  const Vec dx = x - base_;
  for (int k = 0; k < map_.dim; ++k) {
    if (dx(k) != 0.0) y -= DH_base_[k] * dx(k);
  }
  return y;
}

Vec LinearizedConstraint::quad_form_subgrad(const Vec& x, const Direction& d) const {
  Vec g = map_.G.quad_form_subgrad(x, d);
  for (int k = 0; k < map_.dim; ++k) g(k) -= quad_form(DH_base_[k], d);
  return g;
}

double LinearizedConstraint::scalarized(const Vec& x) const { return lambda_max_scalarize(value(x)).value; }

Vec LinearizedConstraint::scalarized_subgradient(const Vec& x) const {
  return quad_form_subgrad(x, lambda_max_scalarize(value(x)).witness);
}

ConvexOracle LinearizedConstraint::scalarized_oracle() const {
  auto self = std::make_shared<const LinearizedConstraint>(*this);
  return {[self](const Vec& x) { return self->scalarized(x); },
          [self](const Vec& x) { return self->scalarized_subgradient(x); }};
}

ConvexOracle LinearizedConstraint::slack_cost_oracle(double tau) const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidPenalty, "penalty scale must be positive");
  auto self = std::make_shared<const LinearizedConstraint>(*this);
  return {[self, tau](const Vec& x) { return slack_cost(tau, self->value(x)).cost; },
          [self, tau](const Vec& x) {
            Vec g = Vec::Zero(self->base_.size());
            for (const auto& [lam, dir] : spectral_pairs(self->value(x))) {
              if (lam > 0.0) g += self->quad_form_subgrad(x, dir);
            }
            return (tau * g).eval();
          }};
}

namespace {

ConvexOracle linearized_objective(const ScalarDcFunction& f0, const Vec& base, const Vec& v) {
  const ConvexOracle g0 = f0.g;
  return {[g0, base, v](const Vec& x) { return g0.value(x) - v.dot(x - base); },
          [g0, v](const Vec& x) { return (g0.subgradient(x) - v).eval(); }};
}

void check_point(const ProblemInstance& problem, const Vec& x_n, const Vec& v_n) {
  if (x_n.size() != problem.dim() || v_n.size() != problem.dim()) {
    throw Error(ErrorCode::InvalidArgument, "base point / subgradient dimension mismatch");
  }
  if (!x_n.allFinite() || !v_n.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite base point");
}

}  // namespace

SubproblemSpec build_constrained(const ProblemInstance& problem, const Vec& x_n, const Vec& v_n) {
  check_point(problem, x_n, v_n);
  auto lin = std::make_shared<const LinearizedConstraint>(problem.constraint, x_n);
  return {SubproblemMode::Constrained,
          0.0,
          x_n,
          v_n,
          linearized_objective(problem.objective, x_n, v_n),
          lin->scalarized_oracle(),
          problem.feasible_set,
          lin};
}

SubproblemSpec build_penalized(const ProblemInstance& problem, const Vec& x_n, const Vec& v_n, double tau) {
  check_point(problem, x_n, v_n);
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidPenalty, "penalty scale must be positive");
  auto lin = std::make_shared<const LinearizedConstraint>(problem.constraint, x_n);
  return {SubproblemMode::Penalized,
          tau,
          x_n,
          v_n,
          linearized_objective(problem.objective, x_n, v_n) + lin->slack_cost_oracle(tau),
          std::nullopt,
          problem.feasible_set,
          lin};
}

ConeElement recover_slack(const SubproblemSpec& spec, const Vec& x) {
  if (spec.mode != SubproblemMode::Penalized) throw Error(ErrorCode::InvalidArgument, "slack exists only in penalized mode");
  return project_pos(spec.linearization->value(x));
}

}  // namespace conedc
