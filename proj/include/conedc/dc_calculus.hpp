#pragma once

// Constructive DC decompositions for matrix-valued maps and the randomized
// K-convexity verifier.

#include <cstdint>
#include <optional>
#include <vector>

#include "conedc/dc_function.hpp"
#include "conedc/feasible_set.hpp"

namespace conedc {

/// Bound M on max_ij ||Hess F_ij(x)||_F over the region of interest.
struct HessianBound {
  double value = 0.0;
  bool certified = true;
};

/// Sampling estimate of M: central differences of the Jacobian at `samples`
/// box points, times a safety factor 1.5. Always flagged uncertified.
HessianBound estimate_hessian_bound(const SmoothMatrixMap& F, const FeasibleSet& box, int samples, std::uint64_t seed);

/// Exact Hessian bound for F(x) = C + sum_i x_i B_i + sum_ij x_i x_j A_ij:
/// max over entries (s, k) of || [A_ij + A_ji]_sk ||_F. `A` is indexed A[i][j].
double quadratic_hessian_bound(const std::vector<std::vector<Mat>>& A);

struct RegularizedDecomposition {
  ConeDcMap map;
  double mu;
  double hessian_bound;
  bool certified;
};

/// G(x) = F(x) + (mu/2)|x|^2 I, H(x) = (mu/2)|x|^2 I over the PSD cone.
/// Throws BoundTooSmall when mu < order * M. F must provide its Jacobian.
RegularizedDecomposition regularized_dc_decomposition(const SmoothMatrixMap& F, HessianBound M, double mu);

/// (g, h) with h = sum_ij (G_ij + H_ij) and g = lambda_max(F) + h.
ScalarDcFunction lambda_max_dc_decomposition(const ComponentwiseDcMatrix& F);

struct LambdaMaxSubgradient {
  Vec xi_g;
  Vec xi_h;
};

/// One element of each of dg(x), dh(x), built from a unit top eigenvector v:
///   xi_g = sum_ij (v_i v_j + 1) dG_ij + (1 - v_i v_j) dH_ij,  xi_h = sum_ij dG_ij + dH_ij.
LambdaMaxSubgradient lambda_max_subgradient(const ComponentwiseDcMatrix& F, const Vec& x);

/// F_ij = (1/2) F_z - (1/2)(F_ii + F_jj) with z = e_i + e_j, for a matrix-convex F
/// on a single PSD block. Returned as g = F_z / 2, h = (F_ii + F_jj) / 2.
ScalarDcFunction offdiag_dc_extraction(const ConvexConeMap& F, int i, int j);

/// alpha Phi(x1) + (1 - alpha) Phi(x2) - Phi(alpha x1 + (1 - alpha) x2).
ConeElement midpoint_gap(const MapOracle& phi, const Vec& x1, const Vec& x2, double alpha);
/// Phi(x1) - Phi(x2) - DPhi(x2)(x1 - x2). Requires a Jacobian.
ConeElement derivative_gap(const MapOracle& phi, const Vec& x1, const Vec& x2);

struct ConvexityWitness {
  Vec x1;
  Vec x2;
  double alpha;         // NaN for the derivative test
  Direction z;          // direction along which the gap is negative
  double violation;     // -min eigenvalue of the gap (> tolerance)
  ConeElement gap;
};

struct ConvexityVerdict {
  bool passed = true;
  int checks = 0;
  std::optional<ConvexityWitness> witness;
};

struct VerifyOptions {
  int samples = 200;
  std::uint64_t seed = 0;
  double tol = 1e-9;  // gap must be >= -tol * max(1, scale)
};

/// Randomized test of Phi(x) in K-convexity on the box of `region`. Each sample
/// draws x1, x2 uniformly and checks the midpoint inequality at alpha in
/// {0.25, 0.5, 0.75, U(0,1)}, plus the derivative inequality when a Jacobian is
/// available. Deterministic for a given seed.
ConvexityVerdict verify_k_convexity(const MapOracle& phi, const FeasibleSet& region, const VerifyOptions& opts = {});

/// Sampled subgradient inequality f(y) >= f(x) + <s, y - x> + (mu/2)|y - x|^2 - tol (1 + |f(x)|).
bool check_subgradient_inequality(const ConvexOracle& f, const FeasibleSet& region, int samples, std::uint64_t seed,
                                  double mu = 0.0, double tol = 1e-9);

/// Central-difference check of a smooth map's Jacobian, step 1e-6 (1 + |x|).
bool check_jacobian(const SmoothConeMap& H, const FeasibleSet& region, int samples, std::uint64_t seed,
                    double tol = 1e-5);

/// Midpoint convexity sampling for a scalar oracle.
bool check_midpoint_convexity(const std::function<double(const Vec&)>& f, const FeasibleSet& region, int samples,
                              std::uint64_t seed, double tol = 1e-9);

}  // namespace conedc
