#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conedc/dc_calculus.hpp"
#include "conedc/problem.hpp"

namespace conedc {

/// min (x - 0.5)^2  s.t.  x^2 - x^4 <= 0,  x in [-10, 10].
/// Critical points {-1, 0, 1}; multipliers 1.5 at -1 and 0.5 at 1.
ProblemInstance example29();

/// F(x) = C + sum_i x_i B_i + sum_ij x_i x_j A_ij with A[i][j] = A[j][i].
struct QuadraticMapData {
  Mat C;
  std::vector<Mat> B;
  std::vector<std::vector<Mat>> A;

  int dim() const { return static_cast<int>(B.size()); }
  int order() const { return static_cast<int>(C.rows()); }
};

/// Full description of a quadratic SDP instance, enough to export it.
struct QuadraticSdpData {
  QuadraticMapData F;
  Mat P;  // g0 = 0.5 x^T P x + q^T x
  Vec q;
  Mat Q;  // h0 = 0.5 x^T Q x
  Vec lo;
  Vec hi;
  std::optional<Vec> strictly_feasible_point;
};

/// Throws InvalidArgument for inconsistent sizes or asymmetric matrices.
void validate(const QuadraticMapData& data);

SmoothMatrixMap quadratic_matrix_map(const QuadraticMapData& data);
/// Entry (i, j) split as G_ij - H_ij through the eigen-split of its Hessian.
ComponentwiseDcMatrix componentwise_from_quadratic(const QuadraticMapData& data);

/// Constraint built with the regularized decomposition at mu = order * M, M the
/// exact Hessian bound. `mu` overrides the choice (and may throw BoundTooSmall).
ProblemInstance quadratic_sdp(const QuadraticSdpData& data, std::optional<double> mu = std::nullopt,
                              std::string name = "quadratic_sdp");

/// Entries uniform in [-1, 1]; C shifted so F(x_bar) has largest eigenvalue
/// -0.5 at a sampled x_bar in [-1, 1]^d; box [-2, 2]^d. Bitwise reproducible.
QuadraticSdpData random_quadratic_sdp_data(std::uint64_t seed, int dim = 3, int order = 2);
ProblemInstance random_quadratic_sdp(std::uint64_t seed, int dim = 3, int order = 2);

/// X in R^{m x l} flattened column-major (d = m l), constraint X^T X = I as the
/// pair (X^T X - I, I - X^T X) in -(PSD(l) x PSD(l)), box [-2, 2]^d. Without an
/// objective, f0(X) = -<E, X> with E the first l columns of the identity.
ProblemInstance stiefel(int m, int l, std::optional<ScalarDcFunction> objective = std::nullopt);
/// The block (X^T X - I, 0) as a convex map.
ConvexConeMap stiefel_G(int m, int l);

/// F(x) = [[1, x^2], [x^2, 1]]: not PSD-convex.
SmoothMatrixMap nonconvex_witness();
ComponentwiseDcMatrix nonconvex_witness_componentwise();
/// d = 1, l = 2, C = I, A_11 = [[0, 1], [1, 0]].
QuadraticMapData example1_quadratic_data();

std::vector<std::string> builtin_names();
/// Throws InvalidArgument for unknown names.
ProblemInstance builtin(const std::string& name);

/// Sampled oracle checks: subgradient inequalities of g0, h0 and of
/// x -> quad_form(G(x), z) for random z, and the Jacobian of H. Throws
/// InvalidArgument naming the failed check.
void self_check(const ProblemInstance& problem, int samples = 20, std::uint64_t seed = 7);

}  // namespace conedc
