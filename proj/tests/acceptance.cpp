// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its quantities from the library alone.
#include <cstdio>
#include <random>

#include "test_util.hpp"

using namespace stokeslab;
using namespace testutil;

namespace {

int failures = 0;

void criterion(int num, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "pass" : "FAIL", num, name,
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

// --- 1: the series of per-mode integrals diverges linearly -----------------
void c1_divergent_series() {
  auto rows = divergence_demonstration(CounterexampleSpec{60, 1e-30, 96, 0, 8});
  bool ok = rows.size() == 60;
  double quad_err = 0.0;
  for (const auto& r : rows) {
    if (r.n <= 20)
      quad_err = std::max(quad_err, std::abs(r.I_quad - r.I_closed) / r.I_closed);
  }
  ok = ok && quad_err <= 1e-8;
  for (size_t i = 1; i < rows.size(); ++i) ok = ok && rows[i].S > rows[i - 1].S;
  double frac = rows.back().S_over_N;
  ok = ok && frac >= 1.0 / 6.0 - 0.01 && frac <= 1.0 / 6.0;
  criterion(1, "per-mode series diverges linearly, S_N/N -> 1/6", ok,
            fmt("S_60/60 = %.6f, max quad err %.2e", frac, quad_err));
}

// --- 2 & 3: norm table limits stable; d_t g sum diverges like N^5 ----------
void c2_c3_norm_table() {
  auto r100 = norm_table(CounterexampleSpec{100, 1e-30, 32, 8, 8});
  auto r200 = norm_table(CounterexampleSpec{200, 1e-30, 32, 8, 8});
  const auto& a = r100.back();
  const auto& b = r200.back();
  double d1 = std::abs(a.dtw_sq_limit - b.dtw_sq_limit) / b.dtw_sq_limit;
  double d2 = std::abs(a.hess_w_sq_limit - b.hess_w_sq_limit) / b.hess_w_sq_limit;
  criterion(2, "strong-norm limits agree to 4 significant digits (N=100 vs 200)",
            d1 <= 5e-4 && d2 <= 5e-4,
            fmt("rel diffs %.2e, %.2e", d1, d2));

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int n = 100; n <= 200; n += 10) {
    double x = std::log(double(n)), y = std::log(r200[n - 1].dtg_sq);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  double slope = (sxy - sx * sy / cnt) / (sxx - sx * sx / cnt);
  criterion(3, "||d_t g||^2 partial sums grow like N^5",
            std::abs(slope - 5.0) <= 0.3, fmt("fitted exponent %.3f", slope));
}

// --- 4: boundary-layer profile certificate ---------------------------------
void c4_alpha_certificate() {
  double cmax = 0.0;
  bool ok = true;
  for (int n : {1, 2, 5, 10, 50, 200}) {
    AlphaChecks ch = alpha_checks(n);
    ok = ok && ch.pass();
    cmax = std::max({cmax, ch.c3, ch.c6});
  }
  criterion(4, "alpha_n certificate holds with a single constant C <= 10",
            ok && cmax <= 10.0, fmt("max scaled derivative constant %.3f", cmax));
}

// --- 5: divergence solver: residuals, order, bounded ratio family ----------
void c5_div_solver() {
  bool ok = true;
  double rmax = 0.0, bmax = 0.0, band = 0.0;
  std::vector<double> ratios;
  for (int n : {2, 4, 8, 16, 32}) {
    auto g = DiscGrid::make(128, std::max(40, n + 4));
    DivSolution sol = solve_div(mode_field_sin(g, n), NormOrder(2, 2));
    rmax = std::max(rmax, sol.residual_div);
    bmax = std::max(bmax, sol.residual_boundary);
    ratios.push_back(sol.report.get("multiplicative_ratio"));
  }
  ok = ok && rmax <= 1e-4 && bmax <= 1e-4;
  for (size_t i = 1; i < ratios.size(); ++i) {
    double q = ratios[i] / ratios[i - 1];
    band = std::max(band, std::max(q, 1.0 / q));
  }
  ok = ok && band < 1.5;

  // second-order residual convergence on non-polynomial data
  double prev = -1.0;
  bool order_ok = true;
  for (int nr : {16, 24, 32}) {
    auto g = DiscGrid::make(nr, 6);
    DiscField f = DiscField::scalar(g);
    Eigen::VectorXcd prof(g->n_r());
    for (int j = 0; j < g->n_r(); ++j) {
      double r = g->r()[j];
      prof[j] = r * r * std::sin(7.0 * r);
    }
    add_sin(f, 2, prof);
    DivSolution sol = solve_div(f, NormOrder(2, 2));
    if (prev > 0.0 && !(sol.residual_div < 1e-10 && prev < 1e-10))
      order_ok = order_ok && sol.residual_div < prev / 2.25;
    prev = sol.residual_div;
  }
  criterion(5, "div solver: residuals <= 1e-4, order >= 2, ratio band < 1.5x",
            ok && order_ok,
            fmt("max residual %.2e, boundary %.2e, band %.3f", rmax, bmax, band));
}

// --- 6: trace inequality across a random family plus boundary-peaked r^k ---
void c6_trace_family() {
  auto g = DiscGrid::make(96, 12);
  std::mt19937 rng(1234);
  std::vector<double> ratios;
  for (int trial = 0; trial < 50; ++trial)
    ratios.push_back(trace_inequality_ratio(random_smooth_field(g, rng, 3, 3), 2.0));
  for (int k = 1; k <= 64; ++k) {
    DiscField f = DiscField::scalar(g);
    Eigen::VectorXcd prof(g->n_r());
    for (int j = 0; j < g->n_r(); ++j) prof[j] = std::pow(g->r()[j], k);
    f.add_mode(0, prof);
    ratios.push_back(trace_inequality_ratio(f, 2.0));
  }
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  double median = sorted[sorted.size() / 2];
  double mx = sorted.back();
  bool ok = sorted.front() > 0.0 && std::isfinite(mx) && mx <= 3.0 * median;
  criterion(6, "trace inequality ratio uniform over 114-member family",
            ok, fmt("median %.3f, max %.3f (limit 3x median)", median, mx));
}

// --- 7: divergence-free boundary lift --------------------------------------
void c7_solenoidal_lift() {
  auto g = DiscGrid::make(256, 40);
  double dmax = 0.0, bmax = 0.0, tmax = 0.0;
  for (int n : {2, 8, 32}) {
    BoundaryTrace kap(40);
    kap.mode_ref(n) = 0.5;
    kap.mode_ref(-n) = 0.5;  // cos(n theta)
    SolenoidalLift lift = solenoidal_lift_detail(g, kap);
    dmax = std::max(dmax, l2_norm_disc(divergence(lift.w)));
    for (int m = -40; m <= 40; ++m) {
      Complex wr = lift.w.mode(m, 0)(g->n_r() - 1);
      Complex wt = lift.w.mode(m, 1)(g->n_r() - 1);
      Complex target = (std::abs(m) == n) ? Complex(-0.5) : Complex(0.0);
      bmax = std::max({bmax, std::abs(wr - target), std::abs(wt)});
    }
    for (int i = 0; i < 257; ++i) {
      double th = 2.0 * M_PI * i / 257.0;
      Complex b1 = 0.0, b2 = 0.0;
      for (int m = -40; m <= 40; ++m) {
        Complex e = std::polar(1.0, m * th);
        b1 += lift.f1.mode(m, 0)(g->n_r() - 1) * e;
        b2 += lift.f2.mode(m, 0)(g->n_r() - 1) * e;
      }
      tmax = std::max(tmax, std::abs(b1 * std::cos(th) + b2 * std::sin(th)));
    }
  }
  criterion(7, "solenoidal lift: div <= 1e-6, boundary <= 1e-4, tangency <= 1e-8",
            dmax <= 1e-6 && bmax <= 1e-4 && tmax <= 1e-8,
            fmt("div %.2e, boundary %.2e, tangency %.2e", dmax, bmax, tmax));
}

// --- 8: Stokes solver: manufactured orders, energy decay, estimate family --
double manufactured_error(int nr, int nt, const Poly& P, int mm) {
  Poly LP = P.lap(mm);
  auto g = DiscGrid::make(nr, mm + 2);
  SpaceTimeGrid tg(0.0, 1.0, nt);
  SpaceTimeField ft(tg, g, FieldRank::Vector), uex(tg, g, FieldRank::Vector);
  auto put = [&](SpaceTimeField& F, int k, int j, double cosv, double sinv) {
    const int M = g->n_theta();
    F.slice(k).component(0)(mm + M, j) += 0.5 * cosv;
    F.slice(k).component(0)(-mm + M, j) += 0.5 * cosv;
    F.slice(k).component(1)(mm + M, j) += sinv / Complex(0.0, 2.0);
    F.slice(k).component(1)(-mm + M, j) += -sinv / Complex(0.0, 2.0);
  };
  for (int k = 0; k <= nt; ++k) {
    double t = tg.t(k);
    double st = std::sin(M_PI * t), ct = M_PI * std::cos(M_PI * t);
    for (int j = 0; j < nr; ++j) {
      double r = g->r()[j];
      put(uex, k, j, -mm / r * P.eval(r) * st, P.deriv(r) * st);
      double q = ct * P.eval(r) - st * LP.eval(r);
      double qp = ct * P.deriv(r) - st * LP.deriv(r);
      put(ft, k, j, -mm / r * q, qp);
    }
  }
  SolutionPair sol = solve_stokes_homogeneous(ft);
  double err = 0.0;
  for (int k = 0; k <= nt; ++k)
    err = std::max(err, l2_norm_disc(sol.v.slice(k) - uex.slice(k)));
  return err;
}

ProblemData family_member(DiscGridPtr g, const SpaceTimeGrid& tg, double a1,
                          double a2, double a3) {
  ProblemData data{SpaceTimeField(tg, g, FieldRank::Vector),
                   SpaceTimeField(tg, g, FieldRank::Scalar), NormOrder(2, 2)};
  Poly p2{2, {1.0}}, p3{3, {1.0, 0.0, -1.0}}, p1{1, {1.0, 0.0, 0.3}};
  for (int k = 0; k <= tg.n_t; ++k) {
    double t = tg.t(k);
    add_sin(data.g.slice(k), 2, sample(*g, p2, a1 * std::sin(M_PI * t)));
    DiscField S = DiscField::scalar(g);
    add_sin(S, 3, sample(*g, p3, a2 * (t + 0.2 * t * t)));
    DiscField S2 = DiscField::scalar(g);
    add_sin(S2, 1, sample(*g, p1, a3 * t));
    data.f.slice(k) = grad_perp(S) + gradient(S2);
  }
  return data;
}

void c8_stokes() {
  // temporal order >= 1
  Poly P{3, {1.0, 0.0, -2.0, 0.0, 1.0}};
  double e8 = manufactured_error(32, 8, P, 3);
  double e16 = manufactured_error(32, 16, P, 3);
  double e32 = manufactured_error(32, 32, P, 3);
  bool t_ok = std::log2(e8 / e16) >= 1.0 && std::log2(e16 / e32) >= 1.0 &&
              e32 < 1e-4;
  // spatial order >= 2
  Poly PS = Poly{3, {1.0, 0.0, -2.0, 0.0, 1.0}} *
            Poly{0, {1.0, 0.0, 0.0, 0.0, 0.8, 0.0, 0.0, 0.0, 0.6}};
  double s8 = manufactured_error(8, 256, PS, 3);
  double s16 = manufactured_error(16, 256, PS, 3);
  double s_order = std::log(s8 / s16) / std::log(2.0);
  bool s_ok = s_order >= 2.0;

  // energy decay of the homogeneous stepper
  auto g0 = DiscGrid::make(48, 4);
  detail::StokesModeStepper st(*g0, 2, 0.002, 0.5);
  int n = g0->n_r() + 1;
  Eigen::VectorXcd phi0(n);
  for (int i = 0; i < n; ++i) {
    double r = g0->rx()[i];
    phi0[i] = std::pow(1.0 - r * r, 2) * r * r;
  }
  st.set_state(st.L().cast<Complex>() * phi0, phi0);
  auto energy = [&](const Eigen::VectorXcd& phi) {
    Eigen::VectorXcd ur = detail::radial_velocity_ext(*g0, 2, phi);
    Eigen::VectorXcd ut = g0->Dx() * phi;
    double e = 0.0;
    for (int i = 1; i < n; ++i)
      e += g0->w()[i - 1] * g0->rx()[i] * (std::norm(ur[i]) + std::norm(ut[i]));
    return e;
  };
  double e_prev = energy(st.phi());
  bool decay = true;
  for (int k = 0; k < 100; ++k) {
    st.step(Eigen::VectorXcd::Zero(n));
    double e = energy(st.phi());
    decay = decay && e <= e_prev * (1.0 + 1e-12);
    e_prev = e;
  }

  // estimate ratio over a 10-member random family
  auto g = DiscGrid::make(48, 8);
  SpaceTimeGrid tg(0.0, 1.0, 24);
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> U(0.5, 1.5);
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < 10; ++i) {
    SolutionPair sol = solve_stokes(family_member(g, tg, U(rng), U(rng), U(rng)));
    double r = sol.report.get("estimate_ratio");
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  bool fam_ok = std::isfinite(hi) && hi / lo < 1.5;

  criterion(8, "stokes: time order >= 1, space order >= 2, decay, ratio family",
            t_ok && s_ok && decay && fam_ok,
            fmt("space order %.2f, family spread %.3f", s_order, hi / lo));
}

// --- 9: iteration lemma constants ------------------------------------------
void c9_iteration_lemma() {
  bool ok = true;
  double derr = 0.0;
  for (double alpha : {1.0, 2.0, 4.0}) {
    double A = 2.0, eps = std::pow(2.0, -alpha - 1.0);
    IterationInstance inst{[&](double rho) {
                             return A / std::pow(1.01 - rho, alpha);
                           },
                           A, alpha, eps};
    IterationResult res = iteration_lemma(inst, 0.25, 1.0);
    derr = std::max(derr, std::abs(res.B_series - res.B_closed) /
                              std::abs(res.B_closed));
    ok = ok && res.conclusion_holds;
  }
  criterion(9, "iteration lemma: series B matches closed form, bound holds",
            ok && derr <= 1e-10, fmt("max rel diff %.2e", derr));
}

// --- 10: uniqueness witness: solver differences vanish under refinement ----
void c10_uniqueness() {
  auto g = DiscGrid::make(32, 6);
  SpaceTimeGrid tg(0.0, 1.0, 16);
  ProblemData data = family_member(g, tg, 1.0, 0.8, 1.2);
  StokesOptions a, b, c;
  b.time_refine = 2;
  c.time_refine = 4;
  double d0 = energy_uniqueness_check(data, a, a);
  double d1 = energy_uniqueness_check(data, a, b);
  double d2 = energy_uniqueness_check(data, b, c);
  criterion(10, "uniqueness: identical configs agree, refinement differences shrink",
            d0 == 0.0 && d1 < 0.05 && d2 < d1,
            fmt("d(dt,dt/2) = %.2e, d(dt/2,dt/4) = %.2e", d1, d2));
}

}  // namespace

int main() {
  c1_divergent_series();
  c2_c3_norm_table();
  c4_alpha_certificate();
  c5_div_solver();
  c6_trace_family();
  c7_solenoidal_lift();
  c8_stokes();
  c9_iteration_lemma();
  c10_uniqueness();
  std::printf("%s: %d of 10 criteria passed\n",
              failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              10 - failures);
  return failures == 0 ? 0 : 1;
}
