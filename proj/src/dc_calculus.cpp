#include "conedc/dc_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conedc/error.hpp"

namespace conedc {

HessianBound estimate_hessian_bound(const SmoothMatrixMap& F, const FeasibleSet& box, int samples, std::uint64_t seed) {
  if (!F.jacobian) throw Error(ErrorCode::InvalidArgument, "Hessian estimation needs the Jacobian");
  std::mt19937_64 rng(seed);
  const int d = F.dim;
  const int l = F.order;
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec x = box.sample_box(rng);
    const double delta = 1e-6 * (1.0 + x.norm());
    // hess[k] holds d/dx_k of the Jacobian, i.e. row k of every entry Hessian.
    std::vector<std::vector<Mat>> hess(d);
    for (int k = 0; k < d; ++k) {
      const auto jp = F.jacobian(x + delta * Vec::Unit(d, k));
      const auto jm = F.jacobian(x - delta * Vec::Unit(d, k));
      for (int m = 0; m < d; ++m) hess[k].push_back((jp[m] - jm[m]) / (2.0 * delta));
    }
    for (int i = 0; i < l; ++i) {
      for (int j = i; j < l; ++j) {
        double sq = 0.0;
        for (int k = 0; k < d; ++k) {
          for (int m = 0; m < d; ++m) sq += hess[k][m](i, j) * hess[k][m](i, j);
        }
        best = std::max(best, std::sqrt(sq));
      }
    }
  }
  return {1.5 * best, false};
}

double quadratic_hessian_bound(const std::vector<std::vector<Mat>>& A) {
  const std::size_t d = A.size();
  if (d == 0) return 0.0;
  const Eigen::Index l = A[0][0].rows();
  double best = 0.0;
  for (Eigen::Index s = 0; s < l; ++s) {
    for (Eigen::Index k = 0; k < l; ++k) {
      double sq = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          const double h = A[i][j](s, k) + A[j][i](s, k);
          sq += h * h;
        }
      }
      best = std::max(best, std::sqrt(sq));
    }
  }
  return best;
}

RegularizedDecomposition regularized_dc_decomposition(const SmoothMatrixMap& F, HessianBound M, double mu) {
  if (!F.value || !F.jacobian) throw Error(ErrorCode::InvalidArgument, "matrix map needs value and Jacobian");
  const double required = F.order * M.value;
  if (!(mu >= required * (1.0 - 1e-12))) {
    throw Error(ErrorCode::BoundTooSmall, "mu = " + std::to_string(mu) + " < l*M = " + std::to_string(required));
  }
  const Cone k = Cone::psd(F.order);
  const int d = F.dim;
  const Mat I = Mat::Identity(F.order, F.order);

  ConvexConeMap G{k, d,
                  [k, f = F.value, mu, I](const Vec& x) { return ConeElement(k, {f(x) + 0.5 * mu * x.squaredNorm() * I}); },
                  [d, jac = F.jacobian, mu](const Vec& x, const Direction& dir) {
                    const auto J = jac(x);
                    Vec g(d);
                    for (int i = 0; i < d; ++i) g(i) = dir.v.dot(J[i] * dir.v);
                    return (g + mu * dir.v.squaredNorm() * x).eval();
                  }};
  SmoothConeMap H{k, d, [k, mu, I](const Vec& x) { return ConeElement(k, {0.5 * mu * x.squaredNorm() * I}); },
                  [k, d, mu, I](const Vec& x) {
                    std::vector<ConeElement> out;
                    out.reserve(d);
                    for (int i = 0; i < d; ++i) out.emplace_back(k, std::vector<Mat>{mu * x(i) * I});
                    return out;
                  }};
  return {ConeDcMap{k, d, std::move(G), std::move(H)}, mu, M.value, M.certified};
}

namespace {

Vec top_eigenvector(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::InvalidElement, "eigendecomposition failed");
  return es.eigenvectors().col(A.rows() - 1);
}

double lambda_max(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::InvalidElement, "eigendecomposition failed");
  return es.eigenvalues()(A.rows() - 1);
}

double h_sum(const ComponentwiseDcMatrix& F, const Vec& x) {
  double s = 0.0;
  for (int i = 0; i < F.order(); ++i) {
    for (int j = 0; j < F.order(); ++j) {
      const auto& e = F.entry(i, j);
      s += e.G.value(x) + e.H.value(x);
    }
  }
  return s;
}

}  // namespace

LambdaMaxSubgradient lambda_max_subgradient(const ComponentwiseDcMatrix& F, const Vec& x) {
  const Vec v = top_eigenvector(F.value(x));
  Vec xi_g = Vec::Zero(F.dim());
  Vec xi_h = Vec::Zero(F.dim());
  for (int i = 0; i < F.order(); ++i) {
    for (int j = 0; j < F.order(); ++j) {
      const auto& e = F.entry(i, j);
      const Vec dG = e.G.subgradient(x);
      const Vec dH = e.H.subgradient(x);
      const double w = v(i) * v(j);
      xi_g += (w + 1.0) * dG + (1.0 - w) * dH;
      xi_h += dG + dH;
    }
  }
  return {xi_g, xi_h};
}

ScalarDcFunction lambda_max_dc_decomposition(const ComponentwiseDcMatrix& F) {
  ConvexOracle h{[F](const Vec& x) { return h_sum(F, x); },
                 [F](const Vec& x) { return lambda_max_subgradient(F, x).xi_h; }};
  // g is evaluated through the eigenvalue, never through the inner maximization.
  ConvexOracle g{[F](const Vec& x) { return lambda_max(F.value(x)) + h_sum(F, x); },
                 [F](const Vec& x) { return lambda_max_subgradient(F, x).xi_g; }};
  return {F.dim(), std::move(g), std::move(h), 0.0};
}

ScalarDcFunction offdiag_dc_extraction(const ConvexConeMap& F, int i, int j) {
  const auto& blocks = F.cone.blocks();
  if (blocks.size() != 1 || blocks[0].kind != BlockKind::Psd) {
    throw Error(ErrorCode::InvalidArgument, "off-diagonal extraction needs a single PSD block");
  }
  const int l = blocks[0].size;
  if (i == j || i < 0 || j < 0 || i >= l || j >= l) throw Error(ErrorCode::InvalidArgument, "need distinct indices");
  const Direction z{0, Vec::Unit(l, i) + Vec::Unit(l, j)};
  const Direction ei{0, Vec::Unit(l, i)};
  const Direction ej{0, Vec::Unit(l, j)};
  ConvexOracle g{[F, z](const Vec& x) { return 0.5 * quad_form(F.value(x), z); },
                 [F, z](const Vec& x) { return (0.5 * F.quad_form_subgrad(x, z)).eval(); }};
  ConvexOracle h{[F, ei, ej](const Vec& x) {
                   const ConeElement y = F.value(x);
                   return 0.5 * (quad_form(y, ei) + quad_form(y, ej));
                 },
                 [F, ei, ej](const Vec& x) {
                   return (0.5 * (F.quad_form_subgrad(x, ei) + F.quad_form_subgrad(x, ej))).eval();
                 }};
  return {F.dim, std::move(g), std::move(h), 0.0};
}

ConeElement midpoint_gap(const MapOracle& phi, const Vec& x1, const Vec& x2, double alpha) {
  return phi.value(x1) * alpha + phi.value(x2) * (1.0 - alpha) - phi.value(alpha * x1 + (1.0 - alpha) * x2);
}

ConeElement derivative_gap(const MapOracle& phi, const Vec& x1, const Vec& x2) {
  if (!phi.jacobian) throw Error(ErrorCode::InvalidArgument, "derivative gap needs a Jacobian");
  const auto jac = phi.jacobian(x2);
  ConeElement gap = phi.value(x1) - phi.value(x2);
  const Vec dx = x1 - x2;
  for (int k = 0; k < phi.dim; ++k) gap -= jac[k] * dx(k);
  return gap;
}

namespace {

// Records a witness when gap fails to lie in K beyond the scaled tolerance.
bool inspect_gap(ConeElement gap, double scale, double tol, const Vec& x1, const Vec& x2, double alpha,
                 ConvexityVerdict& verdict) {
  ++verdict.checks;
  const Scalarization neg = lambda_max_scalarize(-gap);
  if (neg.value <= tol * std::max(1.0, scale)) return true;
  if (!verdict.witness || neg.value > verdict.witness->violation) {
    verdict.witness.emplace(ConvexityWitness{x1, x2, alpha, neg.witness, neg.value, std::move(gap)});
  }
  verdict.passed = false;
  return false;
}

}  // namespace

ConvexityVerdict verify_k_convexity(const MapOracle& phi, const FeasibleSet& region, const VerifyOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  ConvexityVerdict verdict;
  const double fixed_alphas[] = {0.25, 0.5, 0.75};
  for (int s = 0; s < opts.samples; ++s) {
    const Vec x1 = region.sample_box(rng);
    const Vec x2 = region.sample_box(rng);
    const double scale = phi.value(x1).norm() + phi.value(x2).norm();
    for (double a : fixed_alphas) inspect_gap(midpoint_gap(phi, x1, x2, a), scale, opts.tol, x1, x2, a, verdict);
    const double a = uniform01(rng);
    inspect_gap(midpoint_gap(phi, x1, x2, a), scale, opts.tol, x1, x2, a, verdict);
    if (phi.jacobian) {
      inspect_gap(derivative_gap(phi, x1, x2), scale, opts.tol, x1, x2, std::numeric_limits<double>::quiet_NaN(),
                  verdict);
    }
  }
  return verdict;
}

bool check_subgradient_inequality(const ConvexOracle& f, const FeasibleSet& region, int samples, std::uint64_t seed,
                                  double mu, double tol) {
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Vec x = region.sample_box(rng);
    const Vec y = region.sample_box(rng);
    const double fx = f.value(x);
    const double lower = fx + f.subgradient(x).dot(y - x) + 0.5 * mu * (y - x).squaredNorm();
    if (f.value(y) < lower - tol * (1.0 + std::abs(fx) + std::abs(lower))) return false;
  }
  return true;
}

bool check_jacobian(const SmoothConeMap& H, const FeasibleSet& region, int samples, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Vec x = region.sample_box(rng);
    const Vec u = unit_sphere(rng, H.dim);
    const double delta = 1e-6 * (1.0 + x.norm());
    const ConeElement fd = (H.value(x + delta * u) - H.value(x - delta * u)) * (0.5 / delta);
    const ConeElement an = H.apply_derivative(x, u);
    if ((fd - an).norm() > tol * (1.0 + an.norm() + H.value(x).norm())) return false;
  }
  return true;
}

bool check_midpoint_convexity(const std::function<double(const Vec&)>& f, const FeasibleSet& region, int samples,
                              std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Vec x1 = region.sample_box(rng);
    const Vec x2 = region.sample_box(rng);
    const double a = uniform01(rng);
    const double f1 = f(x1);
    const double f2 = f(x2);
    const double gap = a * f1 + (1.0 - a) * f2 - f(a * x1 + (1.0 - a) * x2);
    if (gap < -tol * std::max({1.0, std::abs(f1), std::abs(f2)})) return false;
  }
  return true;
}

}  // namespace conedc
