#include "conedc/certificates.hpp"

#include <algorithm>
#include <cmath>

#include "conedc/error.hpp"

namespace conedc {

double criticality_residual(const ProblemInstance& problem, const Vec& x, const Vec& v, const InnerOptions& opts) {
  const SubproblemSpec spec = build_constrained(problem, x, v);
  const SolveReport rep = solve_convex(spec, opts);
  if (rep.status == SolveStatus::Infeasible) {
    throw Error(ErrorCode::SubproblemInfeasible, "linearized subproblem at x has no feasible point");
  }
  return spec.objective.value(x) - rep.objective_value;
}

Vec lagrangian_gradient(const ConeDcMap& F, const Vec& x, const ConeElement& lambda) {
  Vec g = Vec::Zero(F.dim);
  for (const auto& [w, dir] : spectral_pairs(lambda)) {
    if (w != 0.0) g += w * F.G.quad_form_subgrad(x, dir);
  }
  const auto jac = F.H.jacobian(x);
  for (int k = 0; k < F.dim; ++k) g(k) -= lambda.inner(jac[k]);
  return g;
}

double normal_cone_distance(const FeasibleSet& set, const Vec& x, const Vec& r, double active_tol) {
  const int d = set.dim();
  std::vector<Vec> gens;
  for (int i = 0; i < d; ++i) {
    if (x(i) <= set.lo()(i) + active_tol) gens.push_back(-Vec::Unit(d, i));
    if (x(i) >= set.hi()(i) - active_tol) gens.push_back(Vec::Unit(d, i));
  }
  for (const auto& h : set.affine()) {
    if (h.a.dot(x) >= h.b - active_tol * (1.0 + std::abs(h.b)) && h.a.squaredNorm() > 0.0) gens.push_back(h.a);
  }
  // Nonnegative least squares over the active generators by cyclic coordinate descent.
  std::vector<double> nu(gens.size(), 0.0);
  Vec res = r;
  for (int sweep = 0; sweep < 10000 && !gens.empty(); ++sweep) {
    double change = 0.0;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const double step = std::max(-nu[k], gens[k].dot(res) / gens[k].squaredNorm());
      if (step != 0.0) {
        nu[k] += step;
        res -= step * gens[k];
        change = std::max(change, std::abs(step) * gens[k].norm());
      }
    }
    if (change <= 1e-15 * (1.0 + r.norm())) break;
  }
  return res.norm();
}

KktResidual kkt_residual(const ProblemInstance& problem, const Vec& x, const Vec& v, const ConeElement& lambda) {
  if (!(lambda.cone() == problem.constraint.cone)) throw Error(ErrorCode::InvalidArgument, "multiplier lives in another cone");
  const Vec r = v - problem.objective.g.subgradient(x) - lagrangian_gradient(problem.constraint, x, lambda);
  return {normal_cone_distance(problem.feasible_set, x, r), std::abs(lambda.inner(problem.constraint.value(x))),
          project_pos(-lambda).norm()};
}

double generalized_criticality_residual(const ProblemInstance& problem, const Vec& x, const Vec& v, double tau,
                                        const InnerOptions& opts) {
  const SubproblemSpec spec = build_penalized(problem, x, v, tau);
  const SolveReport rep = solve_convex(spec, opts);
  return spec.objective.value(x) - rep.objective_value;
}

double infeasibility(const ProblemInstance& problem, const Vec& x) {
  return dist_to_neg_cone(problem.constraint.value(x));
}

CriticalityCertificate certify(const ProblemInstance& problem, const Vec& x, const std::optional<ConeElement>& lambda,
                               const InnerOptions& opts) {
  CriticalityCertificate cert;
  cert.x = x;
  cert.v = problem.objective.h.subgradient(x);
  cert.subproblem_gap = criticality_residual(problem, x, cert.v, opts);
  if (lambda) {
    cert.lambda = *lambda;
    cert.kkt = kkt_residual(problem, x, cert.v, *lambda);
  }
  cert.slater = slater_probe(LinearizedConstraint(problem.constraint, x), problem.feasible_set, opts.tol_feas, opts);
  return cert;
}

}  // namespace conedc
