#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace stokeslab;
using namespace testutil;

namespace {

SpaceTimeField constant_field(DiscGridPtr g, const SpaceTimeGrid& tg, double c) {
  SpaceTimeField u(tg, g, FieldRank::Scalar);
  for (int k = 0; k < u.n_slices(); ++k) u.slice(k).mode(0).setConstant(c);
  return u;
}

}  // namespace

TEST_CASE("norm order validation") {
  REQUIRE_THROWS_AS(NormOrder(1.0, 2.0), std::invalid_argument);
  REQUIRE_THROWS_AS(NormOrder(2.0, 0.5), std::invalid_argument);
  NormOrder o(3.0, 2.0);
  REQUIRE(1.0 / o.s + 1.0 / o.s_conj() == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("norm_lsl: closed forms") {
  auto g = DiscGrid::make(32, 4);
  SpaceTimeGrid tg(0.0, 1.0, 16);
  REQUIRE(norm_lsl(constant_field(g, tg, 1.0), NormOrder(2, 2)) ==
          Catch::Approx(std::sqrt(M_PI)).epsilon(1e-10));
  REQUIRE(norm_lsl(SpaceTimeField(tg, g, FieldRank::Scalar), NormOrder(2, 2)) == 0.0);
  // constant c on (0, T): c pi^{1/s} T^{1/l}
  SpaceTimeGrid tg2(0.0, 0.7, 16);
  double c = 2.5, s = 3.0, l = 1.5;
  REQUIRE(norm_lsl(constant_field(g, tg2, c), NormOrder(s, l)) ==
          Catch::Approx(c * std::pow(M_PI, 1.0 / s) * std::pow(0.7, 1.0 / l))
              .epsilon(1e-9));
}

TEST_CASE("norm_w10 and norm_w21: closed forms and rejection") {
  auto g = DiscGrid::make(32, 4);
  SpaceTimeGrid tg(0.0, 1.0, 16);
  NormOrder o(2, 2);
  SpaceTimeField one = constant_field(g, tg, 1.0);
  REQUIRE(norm_w10(one, o) == Catch::Approx(norm_lsl(one, o)).epsilon(1e-12));

  // u = t: ||u|| = sqrt(pi/3), ||grad u|| = 0, ||d_t u|| = sqrt(pi)
  SpaceTimeField ut(tg, g, FieldRank::Scalar);
  for (int k = 0; k < ut.n_slices(); ++k) ut.slice(k).mode(0).setConstant(tg.t(k));
  REQUIRE(norm_w10(ut, o) == Catch::Approx(std::sqrt(M_PI / 3.0)).epsilon(5e-3));
  double w21 = norm_w21(ut, o);
  REQUIRE(w21 == Catch::Approx(std::sqrt(M_PI / 3.0) + std::sqrt(M_PI)).epsilon(5e-3));

  // u = r cos(theta) t: each piece has a closed form
  SpaceTimeField uc(tg, g, FieldRank::Scalar);
  for (int k = 0; k < uc.n_slices(); ++k)
    add_cos(uc.slice(k), 1, sample(*g, Poly{1, {tg.t(k)}}));
  // ||u||^2 = (pi/4)(1/3); ||grad u||^2 = pi/3; ||d_t u||^2 = pi/4; hessian 0
  double want = std::sqrt(M_PI / 12.0) + std::sqrt(M_PI / 3.0);
  REQUIRE(norm_w10(uc, o) == Catch::Approx(want).epsilon(5e-3));

  SpaceTimeGrid tiny(0.0, 1.0, 2);
  REQUIRE_THROWS_AS(norm_w21(SpaceTimeField(tiny, g, FieldRank::Scalar), o),
                    std::invalid_argument);
}

TEST_CASE("dual_norm: closed forms") {
  auto g = DiscGrid::make(48, 6);
  REQUIRE(dual_norm(DiscField::scalar(g)) == 0.0);

  double lam = 0.0;
  DiscField ef = dirichlet_eigenfunction(g, 2, 1, true, &lam);
  REQUIRE(dual_norm(ef) == Catch::Approx(1.0 / std::sqrt(lam)).epsilon(1e-8));

  // g = r^n sin(n theta): dual norm = ||grad phi|| with the analytic phi
  int n = 4;
  DiscField rhs = mode_field_sin(g, n);
  DiscField phi = DiscField::scalar(g);
  add_sin(phi, n, sample(*g, Poly{n, {-1.0, 0.0, 1.0}}, 1.0 / (4.0 * (n + 1))));
  REQUIRE(dual_norm(rhs) == Catch::Approx(h1_seminorm(phi)).epsilon(1e-9));
}

TEST_CASE("dual_norm_estimate: lower bound that matches at s = 2") {
  auto g = DiscGrid::make(48, 6);
  NormOrder o2(2, 2);
  REQUIRE(dual_norm_estimate(DiscField::scalar(g), o2) == 0.0);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    DiscField f = random_smooth_field(g, rng);
    double exact = dual_norm(f), est = dual_norm_estimate(f, o2);
    REQUIRE(est <= exact * (1.0 + 1e-9));
    REQUIRE(est >= 0.95 * exact);
    // Poincare upper bound with the disc's first Dirichlet eigenvalue
    double cp = 1.0 / bessel_zero(0, 1);
    REQUIRE(exact <= cp * integrate_disc(f, 2.0) * (1.0 + 1e-9));
  }
}

TEST_CASE("trace norm and trace inequality ratio: closed forms") {
  auto g = DiscGrid::make(48, 4);
  DiscField one = DiscField::scalar(g);
  one.mode(0).setConstant(1.0);
  REQUIRE(trace_norm(one, 2.0) == Catch::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-10));
  REQUIRE(trace_inequality_ratio(one, 2.0) ==
          Catch::Approx(std::sqrt(2.0)).epsilon(1e-10));
  REQUIRE(trace_norm(DiscField::scalar(g), 2.0) == 0.0);
}

TEST_CASE("trace inequality ratio bounded on the r^k family") {
  auto g = DiscGrid::make(96, 2);
  for (int k = 1; k <= 64; k *= 2) {
    DiscField f = DiscField::scalar(g);
    f.add_mode(0, sample(*g, Poly{k, {1.0}}));
    double rr = trace_inequality_ratio(f, 2.0);
    REQUIRE(rr > 0.5);
    REQUIRE(rr < 2.0);
  }
}

TEST_CASE("s = l anisotropic norm equals the isotropic space-time norm") {
  auto g = DiscGrid::make(32, 4);
  SpaceTimeGrid tg(0.0, 1.0, 16);
  // separable u = (1 + t^2) f(x): closed form against nested quadrature
  std::mt19937 rng(9);
  DiscField f = random_smooth_field(g, rng);
  SpaceTimeField u(tg, g, FieldRank::Scalar);
  for (int k = 0; k < u.n_slices(); ++k) {
    u.slice(k) = f;
    u.slice(k) *= 1.0 + tg.t(k) * tg.t(k);
  }
  double s = 2.5;
  double fs = integrate_disc(f, s);
  double tquad = 0.0;  // trapezoid of (1+t^2)^s
  for (int k = 0; k <= tg.n_t; ++k)
    tquad += tg.wt(k) * std::pow(1.0 + tg.t(k) * tg.t(k), s);
  REQUIRE(norm_lsl(u, NormOrder(s, s)) ==
          Catch::Approx(fs * std::pow(tquad, 1.0 / s)).epsilon(1e-9));
}

TEST_CASE("Hoelder consistency in the temporal exponent") {
  auto g = DiscGrid::make(32, 4);
  SpaceTimeGrid tg(0.0, 1.0, 16);
  std::mt19937 rng(13);
  DiscField f = random_smooth_field(g, rng);
  SpaceTimeField u(tg, g, FieldRank::Scalar);
  for (int k = 0; k < u.n_slices(); ++k) {
    u.slice(k) = f;
    u.slice(k) *= std::sin(1.0 + 2.0 * tg.t(k));
  }
  double s = 2.0, l = 4.0, lp = 2.0;  // T = 1, so no T factor
  REQUIRE(norm_lsl(u, NormOrder(s, lp)) <=
          norm_lsl(u, NormOrder(s, l)) * (1.0 + 1e-9));
}
