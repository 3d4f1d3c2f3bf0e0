#pragma once

// Residuals certifying criticality, KKT conditions, generalized criticality
// and infeasibility of a point.

#include <optional>

#include "conedc/convex_inner.hpp"

namespace conedc {

/// omega_v(x) - min of the linearized subproblem based at x. Nonnegative (up to
/// the inner tolerance) for feasible x; <= tol means x is critical for this v.
/// Throws SubproblemInfeasible if the subproblem has no feasible point.
double criticality_residual(const ProblemInstance& problem, const Vec& x, const Vec& v, const InnerOptions& opts = {});

struct KktResidual {
  double stationarity;     // dist(v - dg0(x) - D<lambda, F>(x), N_A(x))
  double complementarity;  // |<lambda, F(x)>|
  double dual_feasibility; // dist(lambda, K)
};

/// Gradient of x -> <lambda, F(x)> using the oracles of G (through the spectral
/// decomposition of lambda) and the Jacobian of H.
Vec lagrangian_gradient(const ConeDcMap& F, const Vec& x, const ConeElement& lambda);

/// Distance from r to the normal cone of A at x. Box bounds and half-spaces
/// within `active_tol` of equality count as active.
double normal_cone_distance(const FeasibleSet& set, const Vec& x, const Vec& r, double active_tol = 1e-9);

KktResidual kkt_residual(const ProblemInstance& problem, const Vec& x, const Vec& v, const ConeElement& lambda);

/// [g0(x) + tau trace(F(x)+)] - min of the penalized subproblem based at x.
double generalized_criticality_residual(const ProblemInstance& problem, const Vec& x, const Vec& v, double tau,
                                        const InnerOptions& opts = {});

/// dist(F(x), -K).
double infeasibility(const ProblemInstance& problem, const Vec& x);

struct CriticalityCertificate {
  Vec x;
  Vec v;
  double subproblem_gap;
  std::optional<KktResidual> kkt;
  std::optional<ConeElement> lambda;
  SlaterResult slater;
};

/// Bundles the residuals at x with v taken from the h0 oracle.
CriticalityCertificate certify(const ProblemInstance& problem, const Vec& x,
                               const std::optional<ConeElement>& lambda = std::nullopt, const InnerOptions& opts = {});

}  // namespace conedc
