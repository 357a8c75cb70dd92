#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace stokeslab;
using namespace testutil;

TEST_CASE("grid: radial nodes increasing, boundary included, weights positive") {
  auto g = DiscGrid::make(48, 8);
  const Eigen::VectorXd& r = g->r();
  for (int j = 1; j < g->n_r(); ++j) REQUIRE(r[j] > r[j - 1]);
  REQUIRE(r[0] > 0.0);
  REQUIRE(r[g->n_r() - 1] == 1.0);
  for (int j = 0; j < g->n_r(); ++j) REQUIRE(g->w()[j] > 0.0);
}

TEST_CASE("grid: integrating 1 over the disc gives pi") {
  auto g = DiscGrid::make(32, 4);
  DiscField one = DiscField::scalar(g);
  one.mode(0).setConstant(1.0);
  REQUIRE(std::pow(integrate_disc(one, 2.0), 2) ==
          Catch::Approx(M_PI).epsilon(1e-10));
}

TEST_CASE("grid: quadrature exact for high-degree radial polynomials") {
  auto g = DiscGrid::make(24, 2);
  // int_disc r^k dA = 2 pi / (k + 2); the rule integrates r^k r dr exactly
  // for k + 1 up to the Gauss-Radau degree of exactness.
  for (int k : {0, 1, 5, 17, 2 * 24 - 3}) {
    double q = 0.0;
    for (int j = 0; j < g->n_r(); ++j)
      q += g->w()[j] * std::pow(g->r()[j], k + 1);
    REQUIRE(2.0 * M_PI * q == Catch::Approx(2.0 * M_PI / (k + 2)).epsilon(1e-10));
  }
}

TEST_CASE("gradient: r cos(theta) gives the constant unit vector e1") {
  auto g = DiscGrid::make(32, 4);
  DiscField f = DiscField::scalar(g);
  add_cos(f, 1, sample(*g, Poly{1, {1.0}}));
  DiscField v = gradient(f);
  // (cos, -sin): v_r mode +-1 = 1/2, v_theta mode +-1 = -/+ 1/(2i) ... = +- i/2
  REQUIRE((v.mode(1, 0).array() - 0.5).matrix().cwiseAbs().maxCoeff() < 1e-11);
  REQUIRE((v.mode(1, 1).array() - Complex(0.0, 0.5)).matrix().cwiseAbs().maxCoeff() <
          1e-11);
}

TEST_CASE("gradient: zero field maps to zero") {
  auto g = DiscGrid::make(16, 3);
  REQUIRE(max_abs(gradient(DiscField::scalar(g))) == 0.0);
}

TEST_CASE("gradient: r^2 gives (2r, 0), matching a finite-difference oracle") {
  auto g = DiscGrid::make(32, 2);
  DiscField f = DiscField::scalar(g);
  f.add_mode(0, sample(*g, Poly{2, {1.0}}));
  DiscField v = gradient(f);
  const double h = 1e-6;
  for (int j = 0; j < g->n_r(); ++j) {
    double r = g->r()[j];
    double fd = (std::pow(std::min(r + h, 1.0), 2) - std::pow(r - h, 2)) /
                (std::min(r + h, 1.0) - (r - h));
    REQUIRE(v.mode(0, 0)(j).real() == Catch::Approx(2.0 * r).margin(1e-9));
    REQUIRE(v.mode(0, 0)(j).real() == Catch::Approx(fd).margin(1e-5));
    REQUIRE(std::abs(v.mode(0, 1)(j)) < 1e-12);
  }
  REQUIRE_THROWS_AS(gradient(DiscField::vector(g)), std::invalid_argument);
}

TEST_CASE("divergence: v = (r, 0) gives the constant 2") {
  auto g = DiscGrid::make(32, 4);
  DiscField v = DiscField::vector(g);
  v.add_mode(0, g->r().cast<Complex>(), 0);
  DiscField d = divergence(v);
  // the 1/r in the conservative divergence amplifies round-off near r = 0
  REQUIRE((d.mode(0).array() - 2.0).matrix().cwiseAbs().maxCoeff() < 1e-8);
  REQUIRE_THROWS_AS(divergence(DiscField::scalar(g)), std::invalid_argument);
}

TEST_CASE("divergence: gradient of a harmonic polynomial is divergence-free") {
  auto g = DiscGrid::make(32, 4);
  DiscField f = DiscField::scalar(g);
  add_sin(f, 3, sample(*g, Poly{3, {1.0}}));
  REQUIRE(l2_norm_disc(divergence(gradient(f))) < 1e-9);
}

TEST_CASE("divergence: polynomial field matches the symbolic Laplacian oracle") {
  auto g = DiscGrid::make(40, 6);
  Poly P{2, {1.0, 0.5, -0.25, 0.125}};  // mode-2 profile
  DiscField f = DiscField::scalar(g);
  add_sin(f, 2, sample(*g, P));
  DiscField d = divergence(gradient(f));
  DiscField want = DiscField::scalar(g);
  add_sin(want, 2, sample(*g, P.lap(2)));
  REQUIRE(max_abs(d - want) < 1e-6);
  REQUIRE(l2_norm_disc(d - want) < 1e-8);
}

TEST_CASE("integrate_disc: closed forms and exponent validation") {
  auto g = DiscGrid::make(32, 4);
  DiscField f = DiscField::scalar(g);
  add_cos(f, 1, sample(*g, Poly{1, {1.0}}));  // r cos theta
  REQUIRE(integrate_disc(f, 2.0) == Catch::Approx(std::sqrt(M_PI / 4.0)).epsilon(1e-10));
  REQUIRE(integrate_disc(DiscField::scalar(g), 3.5) == 0.0);
  REQUIRE_THROWS_AS(integrate_disc(f, 0.5), std::invalid_argument);
}

TEST_CASE("Parseval: L2 norm equals the mode sum") {
  auto g = DiscGrid::make(40, 5);
  std::mt19937 rng(2024);
  DiscField f = random_smooth_field(g, rng);
  double mode_sum = 0.0;
  for (int m = -g->n_theta(); m <= g->n_theta(); ++m) {
    Eigen::VectorXcd c = f.mode(m).transpose();
    for (int j = 0; j < g->n_r(); ++j)
      mode_sum += g->w()[j] * g->r()[j] * std::norm(c[j]);
  }
  REQUIRE(std::pow(integrate_disc(f, 2.0), 2) ==
          Catch::Approx(2.0 * M_PI * mode_sum).epsilon(1e-8));
}

TEST_CASE("real fields keep conjugate symmetry under the operators") {
  auto g = DiscGrid::make(32, 5);
  std::mt19937 rng(7);
  DiscField f = random_smooth_field(g, rng);
  for (const DiscField& x : {gradient(f), grad_perp(f)})
    for (int comp = 0; comp < 2; ++comp)
      for (int m = 1; m <= g->n_theta(); ++m)
        REQUIRE((x.mode(m, comp).conjugate() - x.mode(-m, comp))
                    .cwiseAbs()
                    .maxCoeff() < 1e-12);
}

TEST_CASE("space-time grid: uniform step and slice sharing") {
  SpaceTimeGrid tg(0.0, 1.0, 4);
  REQUIRE(tg.dt() == Catch::Approx(0.25));
  REQUIRE_THROWS_AS(SpaceTimeGrid(1.0, 0.0, 4), std::invalid_argument);
  auto g = DiscGrid::make(16, 2);
  SpaceTimeField u(tg, g, FieldRank::Scalar);
  REQUIRE(u.n_slices() == 5);
  for (int k = 0; k < u.n_slices(); ++k) REQUIRE(u.slice(k).grid() == g);
}
