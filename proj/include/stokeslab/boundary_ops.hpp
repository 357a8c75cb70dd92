/// @file boundary_ops.hpp
/// @brief Boundary extension operators on the disc: T1 (extend boundary value
/// and normal derivative), T2 (invert the surface divergence on the circle),
/// T3 (divergence-free lift with w|_{r=1} = -kappa nu).
#pragma once

#include "ops.hpp"

namespace stokeslab {

/// Compactly supported smooth mollification kernel: the normalized bump
/// exp(-1/(1-y^2)) on (-1, 1). Symmetry gives the vanishing first moment.
/// khat is its Fourier transform, precomputed by Gauss-Legendre quadrature.
struct ExtensionKernel {
  Quadrature1D q;
  Eigen::VectorXd Kv;

  ExtensionKernel() : q(gauss_legendre(400, -1.0, 1.0)) {
    Kv.resize(q.nodes.size());
    for (int i = 0; i < Kv.size(); ++i) {
      double y = q.nodes[i];
      Kv[i] = std::exp(-1.0 / (1.0 - y * y));
    }
    Kv /= q.weights.dot(Kv);
  }

  static const ExtensionKernel& instance() {
    static ExtensionKernel k;
    return k;
  }

  double moment0() const { return q.weights.dot(Kv); }
  double moment1() const {
    return (q.weights.array() * q.nodes.array() * Kv.array()).sum();
  }
  /// \int K(y) cos(xi y) dy (real by symmetry).
  double khat(double xi) const {
    double acc = 0.0;
    for (int i = 0; i < Kv.size(); ++i)
      acc += q.weights[i] * Kv[i] * std::cos(xi * q.nodes[i]);
    return acc;
  }
};

/// Cutoff: 1 on [0, 1/2], 0 on [1, inf), C^6 degree-13 smoothstep between.
/// A polynomial transition (rather than the exp(-1/u) bump) keeps the radial
/// profiles well-behaved under spectral differentiation: second derivatives
/// of the extension stay accurate down to r = 0.
inline double zeta_cutoff(double y) {
  double x = (y - 0.5) * 2.0;
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  double s = std::pow(x, 7) *
             (1716.0 +
              x * (-9009.0 +
                   x * (20020.0 +
                        x * (-24024.0 +
                             x * (16380.0 + x * (-6006.0 + x * 924.0))))));
  return 1.0 - s;
}

/// T1: extend boundary data (b, a) into the disc so that f(1,.) = b and
/// d_r f(1,.) = a. Per mode, f_m(r) = zeta(1-r) * khat((1-r)|m|) *
/// (b_m + (r-1) a_m): mollification at scale 1-r (the distance to the
/// boundary) realized as a Fourier multiplier.
inline DiscField extend_t1(DiscGridPtr grid, const BoundaryTrace& b,
                           const BoundaryTrace& a) {
  const ExtensionKernel& ker = ExtensionKernel::instance();
  const int M = grid->n_theta();
  if (b.n_theta() != M || a.n_theta() != M)
    throw std::invalid_argument("extend_t1: trace/grid mode counts differ");
  DiscField f = DiscField::scalar(grid);
  const Eigen::VectorXd& r = grid->r();
  for (int m = -M; m <= M; ++m) {
    Complex bm = b.mode(m), am = a.mode(m);
    if (bm == 0.0 && am == 0.0) continue;
    Eigen::VectorXcd prof(grid->n_r());
    for (int j = 0; j < grid->n_r(); ++j) {
      double delta = 1.0 - r[j];
      double shape = zeta_cutoff(delta) * ker.khat(delta * std::abs(m));
      prof[j] = shape * (bm + (r[j] - 1.0) * am);
    }
    f.mode(m) = prof.transpose();
  }
  return f;
}

/// T2: solve d_theta bhat = kappa on the circle. In Fourier,
/// bhat_m = kappa_m / (i m); requires mean-zero kappa.
inline BoundaryTrace surface_div_inverse(const BoundaryTrace& kappa) {
  if (std::abs(kappa.mode(0)) > 1e-10)
    throw std::invalid_argument("surface_div_inverse: kappa not mean-zero");
  BoundaryTrace b(kappa.n_theta());
  for (int m = -kappa.n_theta(); m <= kappa.n_theta(); ++m) {
    if (m == 0) continue;
    b.mode_ref(m) = kappa.mode(m) / Complex(0.0, double(m));
  }
  return b;
}

/// T3 output with construction intermediates kept for diagnostics.
struct SolenoidalLift {
  DiscField w;       ///< the lift: div w = 0, w|_{r=1} = -kappa nu
  DiscField stream;  ///< stream function S with w = grad_perp S
  DiscField f1, f2;  ///< Cartesian components of the T1 extension f
  BoundaryTrace bhat; ///< tangential boundary component, bhat = -T2 kappa
};

/// T3: divergence-free lift of -kappa nu. With the canonical normal
/// extension nu~(x) = x the antisymmetric construction
/// w_j = d_i (f_i x_j - f_j x_i) has the stream function S = -r f_theta,
/// which is what is evaluated here (div w = 0 then holds exactly for the
/// conservative discrete divergence).
inline SolenoidalLift solenoidal_lift_detail(DiscGridPtr grid,
                                             const BoundaryTrace& kappa) {
  const int M = grid->n_theta();
  SolenoidalLift out;
  out.bhat = BoundaryTrace(M);
  {
    BoundaryTrace t2 = surface_div_inverse(kappa);
    out.bhat.coeffs() = -t2.coeffs();
  }
  // Cartesian boundary components of b = bhat e_theta.
  Eigen::MatrixXcd bh = out.bhat.coeffs();
  Eigen::VectorXcd b1 = -mul_sin_theta(bh).col(0);
  Eigen::VectorXcd b2 = mul_cos_theta(bh).col(0);
  // a = <b, grad> nu~ - b div nu~ = b - 2b = -b on the disc.
  BoundaryTrace tb1(M), tb2(M), ta1(M), ta2(M);
  tb1.coeffs() = b1;
  tb2.coeffs() = b2;
  ta1.coeffs() = -b1;
  ta2.coeffs() = -b2;
  out.f1 = extend_t1(grid, tb1, ta1);
  out.f2 = extend_t1(grid, tb2, ta2);
  // f_theta = -sin * f1 + cos * f2; S = -r f_theta.
  Eigen::MatrixXcd ftheta =
      -mul_sin_theta(out.f1.component(0)) + mul_cos_theta(out.f2.component(0));
  out.stream = DiscField::scalar(grid);
  out.stream.component(0) = ftheta;
  for (int j = 0; j < grid->n_r(); ++j)
    out.stream.component(0).col(j) *= -grid->r()[j];
  out.w = grad_perp(out.stream);
  return out;
}

inline DiscField solenoidal_lift(DiscGridPtr grid, const BoundaryTrace& kappa) {
  return solenoidal_lift_detail(std::move(grid), kappa).w;
}

}  // namespace stokeslab
