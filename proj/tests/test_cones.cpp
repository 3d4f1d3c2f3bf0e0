#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "conedc/cones.hpp"
#include "conedc/error.hpp"
#include "conedc/feasible_set.hpp"

using namespace conedc;

namespace {

ConeElement orth(std::initializer_list<double> v) {
  Mat m(static_cast<Eigen::Index>(v.size()), 1);
  int i = 0;
  for (double x : v) m(i++, 0) = x;
  return ConeElement(Cone::orthant(static_cast<int>(v.size())), {m});
}

ConeElement psd2(double a, double b, double c) {
  Mat m(2, 2);
  m << a, b, b, c;
  return ConeElement(Cone::psd(2), {m});
}

ConeElement random_element(std::mt19937_64& rng, const Cone& K) {
  std::vector<Mat> blocks;
  for (const auto& b : K.blocks()) {
    if (b.kind == BlockKind::Orthant) {
      Mat m(b.size, 1);
      for (int i = 0; i < b.size; ++i) m(i, 0) = uniform(rng, -3.0, 3.0);
      blocks.push_back(m);
    } else {
      Mat m(b.size, b.size);
      for (int i = 0; i < b.size; ++i) {
        for (int j = i; j < b.size; ++j) m(i, j) = m(j, i) = uniform(rng, -3.0, 3.0);
      }
      blocks.push_back(m);
    }
  }
  return ConeElement(K, blocks);
}

}  // namespace

TEST_CASE("project_pos examples") {
  const ConeElement p = project_pos(orth({-1.0, 2.0}));
  CHECK(p.block(0)(0, 0) == 0.0);
  CHECK(p.block(0)(1, 0) == 2.0);

  // [[0,1],[1,0]] has eigenpairs (+1, (1,1)/sqrt2) and (-1, (1,-1)/sqrt2).
  const ConeElement q = project_pos(psd2(0.0, 1.0, 0.0));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) CHECK(q.block(0)(i, j) == doctest::Approx(0.5).epsilon(1e-14));
  }

  CHECK(project_pos(ConeElement::zero(Cone::psd(3))).norm() == 0.0);
}

TEST_CASE("dist_to_neg_cone examples") {
  CHECK(dist_to_neg_cone(orth({-3.0, -1.0})) == 0.0);
  CHECK(dist_to_neg_cone(orth({3.0, -1.0})) == doctest::Approx(3.0));
  CHECK(dist_to_neg_cone(psd2(2.0, 0.0, -5.0)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("slack_cost examples") {
  // x = -0.75: x^2 + 4x + 3 = 0.5625.
  const double y = 0.75 * 0.75 - 3.0 + 3.0;
  const SlackCost a = slack_cost(1.0, ConeElement::scalar(y));
  CHECK(a.cost == doctest::Approx(0.5625));
  CHECK(a.s_star.block(0)(0, 0) == doctest::Approx(0.5625));

  const SlackCost b = slack_cost(2.0, psd2(1.0, 0.0, -1.0));
  CHECK(b.cost == doctest::Approx(2.0));
  CHECK((b.s_star.block(0) - Eigen::Vector2d(1.0, 0.0).asDiagonal().toDenseMatrix()).norm() < 1e-14);

  const SlackCost c = slack_cost(3.0, psd2(-1.0, 0.2, -2.0));
  CHECK(c.cost == 0.0);
  CHECK(c.s_star.norm() == 0.0);

  CHECK_THROWS_AS(slack_cost(0.0, psd2(1, 0, 1)), Error);
  CHECK_THROWS_AS(slack_cost(-1.0, psd2(1, 0, 1)), Error);
}

TEST_CASE("lambda_max_scalarize examples") {
  const Scalarization a = lambda_max_scalarize(psd2(1.0, 0.0, 3.0));
  CHECK(a.value == doctest::Approx(3.0));
  CHECK(std::abs(a.witness.v(1)) == doctest::Approx(1.0));
  CHECK(a.witness.v(0) == doctest::Approx(0.0));

  const Scalarization b = lambda_max_scalarize(orth({-2.0, -1.0}));
  CHECK(b.value == -1.0);
  CHECK(b.witness.v(1) == 1.0);
  CHECK(b.witness.v(0) == 0.0);

  const Scalarization c = lambda_max_scalarize(psd2(0.0, 1.0, 0.0));
  CHECK(c.value == doctest::Approx(1.0));
  CHECK(std::abs(c.witness.v(0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(c.witness.v(0) * c.witness.v(1) == doctest::Approx(0.5));
}

TEST_CASE("product cones take the max over blocks") {
  const Cone K = Cone::product({Cone::psd(2), Cone::orthant(2)});
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 0.5;
  Mat o(2, 1);
  o << 0.25, 2.0;
  const ConeElement y(K, {m, o});
  const Scalarization s = lambda_max_scalarize(y);
  CHECK(s.value == 2.0);
  CHECK(s.witness.block == 1);
  CHECK(dist_to_neg_cone(y) == doctest::Approx(std::sqrt(0.25 + 0.0625 + 4.0)));
  CHECK(K.ambient_dim() == 5);
  CHECK(ConeElement::identity(K).norm() == doctest::Approx(2.0));
  CHECK(ConeElement::identity(K).trace() == doctest::Approx(4.0));
}

TEST_CASE("element validation") {
  Mat asym(2, 2);
  asym << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(ConeElement(Cone::psd(2), {asym}), Error);
  Mat nan = Mat::Zero(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(ConeElement(Cone::psd(2), {nan}), Error);
  CHECK_THROWS_AS(ConeElement(Cone::psd(2), {Mat::Zero(3, 3)}), Error);
  CHECK_THROWS_AS(ConeElement(Cone::orthant(2), {Mat::Zero(2, 2)}), Error);

  // Asymmetry below 1e-8 relative is absorbed by symmetrization.
  Mat tiny(2, 2);
  tiny << 1.0, 1.0 + 1e-12, 1.0, 1.0;
  const ConeElement t(Cone::psd(2), {tiny});
  CHECK(t.block(0)(0, 1) == t.block(0)(1, 0));
}

TEST_CASE("property: Moreau decomposition on 1000 random elements") {
  std::mt19937_64 rng(1);
  const Cone cones[] = {Cone::psd(2), Cone::psd(3), Cone::orthant(4),
                        Cone::product({Cone::psd(2), Cone::orthant(3), Cone::psd(4)})};
  for (int k = 0; k < 1000; ++k) {
    const Cone& K = cones[k % 4];
    const ConeElement y = random_element(rng, K);
    const ConeElement yp = project_pos(y);
    const ConeElement ym = project_pos(-y);
    const double n = y.norm();
    CHECK((y - (yp - ym)).norm() <= 1e-9 * (1.0 + n));
    CHECK(std::abs(yp.inner(ym)) <= 1e-9 * (1.0 + n * n));
    // Both parts lie in K.
    CHECK(lambda_max_scalarize(-yp).value <= 1e-12 * (1.0 + n));
    CHECK(lambda_max_scalarize(-ym).value <= 1e-12 * (1.0 + n));
  }
}

TEST_CASE("property: dist is zero exactly when lambda_max <= 0") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 500; ++k) {
    ConeElement y = random_element(rng, Cone::psd(3));
    if (k % 2 == 0) y = -project_pos(y);  // force membership in -K half the time
    const bool in_neg = lambda_max_scalarize(y).value <= 1e-12;
    CHECK(in_neg == (dist_to_neg_cone(y) <= 1e-12));
  }
}

TEST_CASE("property: slack cost matches brute force on PSD(2)") {
  // min tau*trace(S) over S = [[a, b], [b, c]] with S >= 0 and S - Y >= 0, on a grid.
  std::mt19937_64 rng(3);
  const double h = 0.02;
  for (int k = 0; k < 8; ++k) {
    const double tau = uniform(rng, 0.5, 2.0);
    const ConeElement y = random_element(rng, Cone::psd(2)) * (1.0 / 3.0);
    const Mat& Y = y.block(0);
    double best = std::numeric_limits<double>::infinity();
    for (double a = 0.0; a <= 2.5; a += h) {
      for (double c = 0.0; c <= 2.5; c += h) {
        if (tau * (a + c) >= best) continue;
        for (double b = -2.0; b <= 2.0; b += h) {
          if (oracle::eig2(a, b, c).first < 0.0) continue;
          if (oracle::eig2(a - Y(0, 0), b - Y(0, 1), c - Y(1, 1)).first < 0.0) continue;
          best = tau * (a + c);
          break;
        }
      }
    }
    const double cost = slack_cost(tau, y).cost;
    CHECK(cost <= best + 1e-12);
    CHECK(best <= cost + 8.0 * tau * h + 1e-12);
  }
}

TEST_CASE("property: slack cost matches brute force on orthants") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const int m = 1 + k % 3;
    const double tau = uniform(rng, 0.1, 3.0);
    const ConeElement y = random_element(rng, Cone::orthant(m));
    // Each coordinate independently: smallest grid value s_i >= max(y_i, 0).
    const double h = 1e-3;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      while (s < y.block(0)(i, 0)) s += h;
      best += tau * s;
    }
    const double cost = slack_cost(tau, y).cost;
    CHECK(cost <= best + 1e-12);
    CHECK(best - cost <= tau * m * h + 1e-12);
  }
}

TEST_CASE("property: slack cost is positively homogeneous in tau") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const ConeElement y = random_element(rng, Cone::product({Cone::psd(3), Cone::orthant(2)}));
    const double tau = std::ldexp(1.0, static_cast<int>(k % 11) - 5);  // powers of two: exact scaling
    CHECK(slack_cost(tau, y).cost == tau * slack_cost(1.0, y).cost);
  }
}
