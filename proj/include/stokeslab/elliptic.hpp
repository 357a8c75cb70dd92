/// @file elliptic.hpp
/// @brief Dirichlet Poisson solver on the disc (per-mode radial collocation
/// on the extended node set {0} u grid) and normal-derivative extraction.
#pragma once

#include "ops.hpp"

namespace stokeslab {

namespace detail {

/// Laplacian collocation matrix for mode m on the extended nodes. Rows at
/// r = 0 are left for boundary/regularity conditions by the callers.
inline Eigen::MatrixXd laplacian_ext(const DiscGrid& g, int m) {
  const Eigen::VectorXd& r = g.rx();
  const int n = static_cast<int>(r.size());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  // (1/r) D (r D) - m^2/r^2, valid away from r = 0.
  Eigen::MatrixXd RD = r.asDiagonal() * g.Dx();
  Eigen::MatrixXd A = g.Dx() * RD;
  for (int i = 1; i < n; ++i) {
    L.row(i) = A.row(i) / r[i];
    L(i, i) -= double(m) * double(m) / (r[i] * r[i]);
  }
  return L;
}

/// Solve L_m phi = rhs with phi(1) = 0 and polar regularity at r = 0.
/// rhs is given on the grid nodes; returns phi on the extended nodes.
inline Eigen::VectorXcd dirichlet_mode(const DiscGrid& g, int m,
                                       const Eigen::VectorXcd& rhs) {
  const int n = g.n_r() + 1;
  Eigen::MatrixXd L = laplacian_ext(g, std::abs(m));
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, 1);
  A.middleRows(1, n - 2) = L.middleRows(1, n - 2);
  b.col(0).segment(1, n - 2) = rhs.head(n - 2);
  A(n - 1, n - 1) = 1.0;  // phi(1) = 0
  if (m == 0)
    A.row(0) = g.Dx().row(0);  // phi'(0) = 0
  else
    A(0, 0) = 1.0;  // phi(0) = 0
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::MatrixXd re(n, 2);
  re.col(0) = b.col(0).real();
  re.col(1) = b.col(0).imag();
  Eigen::MatrixXd sol = lu.solve(re);
  return sol.col(0) + Complex(0.0, 1.0) * sol.col(1);
}

}  // namespace detail

struct DirichletSolution {
  DiscField phi;         ///< solution, phi = 0 at r = 1
  double residual = 0.0; ///< discrete L2 norm of Lap(phi) - g
  BoundaryTrace kappa;   ///< normal derivative d(phi)/dr at r = 1
};

/// Solve Lap(phi) = g on the disc with phi|_{r=1} = 0, mode by mode.
inline DirichletSolution solve_dirichlet(const DiscField& g) {
  if (!g.is_scalar()) throw std::invalid_argument("solve_dirichlet: scalar g required");
  const DiscGrid& grid = *g.grid();
  const int M = grid.n_theta(), n = grid.n_r() + 1;
  DirichletSolution out;
  out.phi = DiscField::scalar(g.grid());
  out.kappa = BoundaryTrace(M);
  for (int m = -M; m <= M; ++m) {
    Eigen::VectorXcd rhs = g.mode(m).transpose();
    if (rhs.cwiseAbs().maxCoeff() == 0.0) continue;
    Eigen::VectorXcd phix = detail::dirichlet_mode(grid, m, rhs);
    out.phi.mode(m) = phix.tail(n - 1).transpose();
    out.kappa.mode_ref(m) = (g.grid()->Dx().row(n - 1).cast<Complex>() * phix)(0);
  }
  out.residual = l2_norm_disc(laplacian(out.phi) - g);
  return out;
}

/// Discrete L2(Omega) norm of Lap(f); ~0 certifies harmonicity.
inline double harmonic_check(const DiscField& f) {
  return l2_norm_disc(laplacian(f));
}

}  // namespace stokeslab
