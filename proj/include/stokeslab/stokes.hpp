/// @file stokes.hpp
/// @brief Nonstationary Stokes solver on the disc: divergence lift w = Tg per
/// time slice, homogeneous solve in stream-function form (coupled
/// vorticity/stream radial systems per mode, Crank-Nicolson in time),
/// pressure recovery per slice, and the decomposition v = u + w.
#pragma once

#include "div_solver.hpp"

namespace stokeslab {

struct StokesOptions {
  /// Time-stepping parameter: 0.5 = Crank-Nicolson, 1.0 = implicit Euler.
  double theta = 0.5;
  /// Internal substeps per data interval (data interpolated linearly).
  int time_refine = 1;
};

struct ProblemData {
  SpaceTimeField f;  ///< vector forcing
  SpaceTimeField g;  ///< scalar divergence data (mean-zero, g(.,0) = 0)
  NormOrder order;
};

struct SolutionPair {
  SpaceTimeField v;  ///< velocity
  SpaceTimeField p;  ///< pressure, zero disc mean per slice
  NormReport report;
};

namespace detail {

/// One Fourier mode of the homogeneous solver. Unknowns are the vorticity
/// and stream function on the extended radial nodes, x = [omega; phi], with
///   (I - theta dt L_m) omega = rhs   (momentum, curl form)
///   L_m phi - omega = 0              (stream-vorticity coupling)
///   phi(1) = 0, phi'(1) = 0          (no-slip)
/// plus polar regularity rows at r = 0.
class StokesModeStepper {
 public:
  StokesModeStepper(const DiscGrid& g, int m, double dt, double theta)
      : g_(g), m_(m), dt_(dt), theta_(theta), n_(g.n_r() + 1) {
    L_ = laplacian_ext(g, m);
    const int n = n_;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 1; i < n - 1; ++i) {
      A.row(i).head(n) = -theta_ * dt_ * L_.row(i);
      A(i, i) += 1.0;
    }
    if (m == 0)
      A.row(0).head(n) = g.Dx().row(0);
    else
      A(0, 0) = 1.0;
    A.row(n - 1).tail(n) = g.Dx().row(n - 1);  // phi'(1) = 0
    for (int i = 1; i < n - 1; ++i) {
      A.row(n + i).tail(n) = L_.row(i);
      A(n + i, i) = -1.0;
    }
    if (m == 0)
      A.row(n).tail(n) = g.Dx().row(0);
    else
      A(n, n) = 1.0;
    A(2 * n - 1, 2 * n - 1) = 1.0;  // phi(1) = 0
    lu_.compute(A);
    omega_ = Eigen::VectorXcd::Zero(n);
    phi_ = Eigen::VectorXcd::Zero(n);
  }

  /// Advance one step; curlf_mid on extended nodes (entry 0 unused).
  void step(const Eigen::VectorXcd& curlf_mid) {
    const int n = n_;
    Eigen::VectorXcd expl =
        omega_ + (1.0 - theta_) * dt_ * (L_ * omega_) + dt_ * curlf_mid;
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(2 * n);
    b.segment(1, n - 2) = expl.segment(1, n - 2);
    Eigen::MatrixXd rhs(2 * n, 2);
    rhs.col(0) = b.real();
    rhs.col(1) = b.imag();
    Eigen::MatrixXd sol = lu_.solve(rhs);
    Eigen::VectorXcd x = sol.col(0) + Complex(0.0, 1.0) * sol.col(1);
    omega_ = x.head(n);
    phi_ = x.tail(n);
  }

  void set_state(const Eigen::VectorXcd& omega, const Eigen::VectorXcd& phi) {
    omega_ = omega;
    phi_ = phi;
  }
  const Eigen::VectorXcd& omega() const { return omega_; }
  const Eigen::VectorXcd& phi() const { return phi_; }
  const Eigen::MatrixXd& L() const { return L_; }

 private:
  const DiscGrid& g_;
  int m_;
  double dt_, theta_;
  int n_;
  Eigen::MatrixXd L_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::VectorXcd omega_, phi_;
};

/// Radial profile of u_r = -(i m / r) phi on the extended nodes, with the
/// r = 0 value filled by the L'Hopital limit -i m phi'(0).
inline Eigen::VectorXcd radial_velocity_ext(const DiscGrid& g, int m,
                                            const Eigen::VectorXcd& phi) {
  const int n = static_cast<int>(phi.size());
  Eigen::VectorXcd ur(n);
  const Complex im(0.0, double(m));
  ur[0] = -im * (g.Dx().row(0).cast<Complex>() * phi)(0);
  for (int i = 1; i < n; ++i) ur[i] = -im * phi[i] / g.rx()[i];
  return ur;
}

/// Boundary value of (Lap u)_r at r = 1 for one mode, from the stream
/// function on the extended nodes.
inline Complex lap_u_r_boundary(const DiscGrid& g, int m, const Eigen::VectorXcd& phi) {
  const int n = static_cast<int>(phi.size());
  Eigen::VectorXcd ur = radial_velocity_ext(g, m, phi);
  Eigen::VectorXcd ut = g.Dx() * phi;
  Eigen::VectorXcd dur = g.Dx() * ur;
  Eigen::VectorXcd rdur = (g.rx().array().cast<Complex>() * dur.array()).matrix();
  Complex lead = (g.Dx().row(n - 1).cast<Complex>() * rdur)(0);  // r = 1
  return lead - (double(m) * double(m) + 1.0) * ur[n - 1] -
         2.0 * Complex(0.0, double(m)) * ut[n - 1];
}

/// Per-slice pressure recovery: Lap p = div(ftilde) with the momentum
/// boundary condition dp/dr(1) = ftilde_r(1) + (Lap u)_r(1) (no-slip kills
/// d_t u_r on the boundary). The m = 0 mode is the compatible singular
/// Neumann problem, solved in the least-squares sense with a zero-mean row.
inline Eigen::VectorXcd neumann_pressure_mode(const DiscGrid& g, int m,
                                              const Eigen::VectorXcd& rhs_grid,
                                              Complex h) {
  const int n = g.n_r() + 1;
  Eigen::MatrixXd L = laplacian_ext(g, m);
  if (m == 0) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n + 1);
    A.middleRows(1, n - 2) = L.middleRows(1, n - 2);
    b.segment(1, n - 2) = rhs_grid.head(n - 2);
    A.row(0) = g.Dx().row(0);  // p'(0) = 0
    A.row(n - 1) = g.Dx().row(n - 1);
    b[n - 1] = h;
    A.row(n).tail(n - 1) = (g.w().array() * g.r().array()).matrix().transpose();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd rhs2(n + 1, 2);
    rhs2.col(0) = b.real();
    rhs2.col(1) = b.imag();
    Eigen::MatrixXd sol = qr.solve(rhs2);
    return sol.col(0) + Complex(0.0, 1.0) * sol.col(1);
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
  A.middleRows(1, n - 2) = L.middleRows(1, n - 2);
  b.segment(1, n - 2) = rhs_grid.head(n - 2);
  A(0, 0) = 1.0;
  A.row(n - 1) = g.Dx().row(n - 1);
  b[n - 1] = h;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::MatrixXd rhs2(n, 2);
  rhs2.col(0) = b.real();
  rhs2.col(1) = b.imag();
  Eigen::MatrixXd sol = lu.solve(rhs2);
  return sol.col(0) + Complex(0.0, 1.0) * sol.col(1);
}

}  // namespace detail

/// Solve the homogeneous-divergence Stokes problem: d_t u - Lap u + grad p =
/// ftilde, div u = 0, u|_{bdry} = 0, u(0) = 0.
inline SolutionPair solve_stokes_homogeneous(const SpaceTimeField& ft,
                                             StokesOptions opt = {}) {
  if (ft.rank() != FieldRank::Vector)
    throw std::invalid_argument("solve_stokes_homogeneous: vector forcing required");
  if (!(opt.theta >= 0.5 && opt.theta <= 1.0) || opt.time_refine < 1)
    throw std::invalid_argument("solve_stokes_homogeneous: bad options");
  const DiscGridPtr grid = ft.grid();
  const DiscGrid& g = *grid;
  const SpaceTimeGrid& tg = ft.tgrid();
  const int M = g.n_theta(), n = g.n_r() + 1, K = tg.n_t;
  const double dt_sub = tg.dt() / opt.time_refine;

  // Per-slice curl of the forcing, stored per mode on extended nodes
  // (entry 0 unused by the stepper rows).
  std::vector<DiscField> curls;
  curls.reserve(K + 1);
  for (int k = 0; k <= K; ++k) curls.push_back(curl(ft.slice(k)));
  double fmax = 0.0;
  for (int k = 0; k <= K; ++k) fmax = std::max(fmax, l2_norm_disc(ft.slice(k)));

  SolutionPair out;
  out.v = SpaceTimeField(tg, grid, FieldRank::Vector);
  out.p = SpaceTimeField(tg, grid, FieldRank::Scalar);

  // Stream functions per mode and data node, kept for pressure recovery.
  std::vector<std::vector<Eigen::VectorXcd>> phis(
      M + 1, std::vector<Eigen::VectorXcd>(K + 1, Eigen::VectorXcd::Zero(n)));

  for (int m = 0; m <= M; ++m) {
    bool active = false;
    for (int k = 0; k <= K && !active; ++k)
      active = curls[k].mode(m).cwiseAbs().maxCoeff() > 0.0;
    if (!active) continue;
    detail::StokesModeStepper st(g, m, dt_sub, opt.theta);
    for (int k = 0; k < K; ++k) {
      for (int j = 0; j < opt.time_refine; ++j) {
        const double frac = (j + opt.theta) / opt.time_refine;
        Eigen::VectorXcd cm = Eigen::VectorXcd::Zero(n);
        Eigen::VectorXcd c0 = curls[k].mode(m).transpose();
        Eigen::VectorXcd c1 = curls[k + 1].mode(m).transpose();
        cm.tail(n - 1) = (1.0 - frac) * c0 + frac * c1;
        st.step(cm);
      }
      phis[m][k + 1] = st.phi();
    }
  }

  // Velocity slices and the blow-up guard.
  for (int k = 0; k <= K; ++k) {
    DiscField phi_field = DiscField::scalar(grid);
    for (int m = 0; m <= M; ++m) {
      Eigen::VectorXcd pg = phis[m][k].tail(n - 1);
      phi_field.mode(m) = pg.transpose();
      if (m > 0) phi_field.mode(-m) = pg.conjugate().transpose();
    }
    out.v.slice(k) = grad_perp(phi_field);
    if (l2_norm_disc(out.v.slice(k)) > 1e6 * (1.0 + fmax))
      throw std::runtime_error("solve_stokes_homogeneous: energy blow-up detected");
  }

  // Pressure recovery per slice.
  for (int k = 0; k <= K; ++k) {
    DiscField divf = divergence(ft.slice(k));
    DiscField p = DiscField::scalar(grid);
    for (int m = 0; m <= M; ++m) {
      Eigen::VectorXcd rhs = divf.mode(m).transpose();
      Complex fr1 = ft.slice(k).mode(m, 0)(g.n_r() - 1);
      Complex h = fr1 + detail::lap_u_r_boundary(g, m, phis[m][k]);
      if (rhs.cwiseAbs().maxCoeff() == 0.0 && std::abs(h) == 0.0) continue;
      Eigen::VectorXcd pm = detail::neumann_pressure_mode(g, m, rhs, h).tail(n - 1);
      p.mode(m) = pm.transpose();
      if (m > 0) p.mode(-m) = pm.conjugate().transpose();
    }
    // gauge: zero disc mean
    double mean = mean_integral_disc(p);
    p.mode(0).array() -= Complex(mean / M_PI, 0.0);
    out.p.slice(k) = p;
  }
  return out;
}

/// Apply the divergence solver slice-wise: w(.,t) = T g(.,t).
inline SpaceTimeField lift_divergence(const SpaceTimeField& g, const NormOrder& o) {
  if (g.rank() != FieldRank::Scalar)
    throw std::invalid_argument("lift_divergence: scalar g required");
  SpaceTimeField w(g.tgrid(), g.grid(), FieldRank::Vector);
  for (int k = 0; k < g.n_slices(); ++k) {
    try {
      w.slice(k) = solve_div(g.slice(k), o).u;
    } catch (const std::exception& e) {
      throw std::runtime_error("lift_divergence: slice " + std::to_string(k) +
                               ": " + e.what());
    }
  }
  return w;
}

/// Check the ProblemData compatibility conditions on g.
inline void validate_problem_data(const ProblemData& data) {
  double gmax = 0.0;
  for (int k = 0; k < data.g.n_slices(); ++k)
    gmax = std::max(gmax, l2_norm_disc(data.g.slice(k)));
  for (int k = 0; k < data.g.n_slices(); ++k) {
    if (std::abs(mean_integral_disc(data.g.slice(k))) > 1e-8 * std::max(1.0, gmax))
      throw std::invalid_argument("ProblemData: g slice " + std::to_string(k) +
                                  " is not mean-zero");
  }
  if (l2_norm_disc(data.g.slice(0)) > 1e-10 * std::max(1.0, gmax))
    throw std::invalid_argument("ProblemData: g(.,0) != 0");
  data.f.require_same_tgrid(data.g);
}

/// Full solve by the decomposition v = u + w.
inline SolutionPair solve_stokes(const ProblemData& data, StokesOptions opt = {}) {
  validate_problem_data(data);
  const NormOrder& o = data.order;
  SpaceTimeField w = lift_divergence(data.g, o);
  SpaceTimeField dtw = w.time_derivative();
  SpaceTimeField ft = data.f;
  for (int k = 0; k < ft.n_slices(); ++k)
    ft.slice(k) -= dtw.slice(k) - vector_laplacian(w.slice(k));
  SolutionPair sol = solve_stokes_homogeneous(ft, opt);
  sol.v += w;

  // Both sides of the a-priori estimate, as measured quantities.
  const double lhs = norm_w21(sol.v, o) + norm_gradient_lsl(sol.p, o);
  SpaceTimeField dtg = data.g.time_derivative();
  double dual_acc = 0.0;
  for (int k = 0; k < dtg.n_slices(); ++k)
    dual_acc += dtg.tgrid().wt(k) * std::pow(dual_norm(dtg.slice(k)), o.l);
  const double dtg_dual = std::pow(dual_acc, 1.0 / o.l);
  const double dtg_lsl = norm_lsl(dtg, o);
  const double rhs = norm_lsl(data.f, o) + norm_w10(data.g, o) +
                     std::pow(dtg_lsl, 1.0 / o.s) * std::pow(dtg_dual, 1.0 / o.s_conj());
  sol.report.set("estimate_lhs", lhs);
  sol.report.set("estimate_rhs", rhs);
  sol.report.set("norm_v_w21", norm_w21(sol.v, o));
  sol.report.set("norm_grad_p", norm_gradient_lsl(sol.p, o));
  sol.report.set("norm_f", norm_lsl(data.f, o));
  sol.report.set("norm_g_w10", norm_w10(data.g, o));
  sol.report.set("norm_dtg", dtg_lsl);
  sol.report.set("norm_dtg_dual", dtg_dual);
  if (rhs > 0.0) sol.report.set("estimate_ratio", lhs / rhs);
  return sol;
}

/// ||v_1 - v_2||_{C([0,T]; L_2)} for two solver configurations on the same
/// data; vanishing under refinement witnesses uniqueness.
inline double energy_uniqueness_check(const ProblemData& data, StokesOptions a,
                                      StokesOptions b) {
  SolutionPair sa = solve_stokes(data, a);
  SolutionPair sb = solve_stokes(data, b);
  double m = 0.0;
  for (int k = 0; k < sa.v.n_slices(); ++k)
    m = std::max(m, l2_norm_disc(sa.v.slice(k) - sb.v.slice(k)));
  return m;
}

}  // namespace stokeslab
