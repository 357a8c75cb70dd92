/// @file div_solver.hpp
/// @brief Right inverse of the divergence with zero boundary values:
/// u = grad(phi) + T3(kappa) where phi solves the Dirichlet problem for g and
/// kappa = d(phi)/dnu. Reports the multiplicative estimate ratio.
#pragma once

#include "boundary_ops.hpp"
#include "norms.hpp"

namespace stokeslab {

struct DivSolution {
  DiscField u;
  double residual_div = 0.0;       ///< relative ||div u - g|| / ||g||
  double residual_boundary = 0.0;  ///< max boundary mode amplitude of u
  NormReport report;
};

/// Solve div u = g, u|_{bdry} = 0 for mean-zero g.
inline DivSolution solve_div(const DiscField& g, const NormOrder& o) {
  if (!g.is_scalar()) throw std::invalid_argument("solve_div: scalar g required");
  DivSolution out;
  const double gl2 = l2_norm_disc(g);
  const double mean = mean_integral_disc(g);
  if (std::abs(mean) > 1e-8 * std::max(1.0, gl2))
    throw std::invalid_argument("solve_div: g is not mean-zero");
  if (gl2 == 0.0) {
    out.u = DiscField::vector(g.grid());
    out.report.set("norm_u_ls", 0.0);
    out.report.set("norm_g_ls", 0.0);
    out.report.set("dual_norm_g", 0.0);
    return out;
  }
  DirichletSolution ds = solve_dirichlet(g);
  // Divergence theorem: the boundary flux of grad(phi) equals int g; a
  // non-mean-zero kappa here signals a solver defect, not bad data.
  if (std::abs(2.0 * M_PI * ds.kappa.mode(0).real() - mean) > 1e-7 * std::max(1.0, gl2))
    throw std::runtime_error("solve_div: kappa mean violates the divergence theorem");
  out.u = gradient(ds.phi) + solenoidal_lift(g.grid(), ds.kappa);
  out.residual_div = l2_norm_disc(divergence(out.u) - g) / gl2;
  double bmax = 0.0;
  for (int k = 0; k < 2; ++k)
    bmax = std::max(bmax, out.u.component(k).col(g.grid()->n_r() - 1).cwiseAbs().maxCoeff());
  out.residual_boundary = bmax;

  const double u_ls = integrate_disc(out.u, o.s);
  const double g_ls = integrate_disc(g, o.s);
  const double g_dual = (o.s == 2.0) ? h1_seminorm(ds.phi) : dual_norm_estimate(g, o);
  out.report.set("norm_u_ls", u_ls);
  out.report.set("norm_g_ls", g_ls);
  out.report.set("dual_norm_g", g_dual);
  out.report.set("residual_div_rel", out.residual_div);
  out.report.set("residual_boundary", bmax);
  if (g_ls > 0.0 && g_dual > 0.0)
    out.report.set("multiplicative_ratio",
                   u_ls / (std::pow(g_ls, 1.0 / o.s) * std::pow(g_dual, 1.0 / o.s_conj())));
  return out;
}

}  // namespace stokeslab
