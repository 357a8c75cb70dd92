/// @file norms.hpp
/// @brief Anisotropic space-time norms L_{s,l}, W^{1,0}_{s,l}, W^{2,1}_{s,l},
/// spatial Sobolev and boundary-trace norms, and negative-order dual norms.
///
/// Pointwise gradient/Hessian magnitudes are obtained through the ladder
/// operator P = d_x + i d_y: for real f, |P f|^2 = |grad f|^2 and
/// |Hess f|^2 = |Lap f|^2 / 2 + |P^2 f|^2 / 2.
#pragma once

#include <map>
#include <string>

#include "elliptic.hpp"

namespace stokeslab {

struct NormOrder {
  double s = 2.0;
  double l = 2.0;

  NormOrder() = default;
  NormOrder(double s_, double l_) : s(s_), l(l_) {
    if (!(s > 1.0) || !(l > 1.0) || !std::isfinite(s) || !std::isfinite(l))
      throw std::invalid_argument("NormOrder: need 1 < s, l < inf");
  }
  /// Conjugate exponent s' = s/(s-1).
  double s_conj() const { return s / (s - 1.0); }
  double l_conj() const { return l / (l - 1.0); }
};

struct NormReport {
  std::map<std::string, double> values;

  void set(const std::string& k, double v) { values[k] = v; }
  double get(const std::string& k) const {
    auto it = values.find(k);
    if (it == values.end()) throw std::out_of_range("NormReport: missing " + k);
    return it->second;
  }
  bool has(const std::string& k) const { return values.count(k) > 0; }
};

namespace detail {

using Stack = std::vector<Eigen::MatrixXcd>;

/// (\int_Omega (sum_c |comp_c|^2)^{s/2} dx)^{1/s} for a component stack.
inline double ls_norm_stack(const DiscGrid& g, const Stack& stack, double s) {
  const int n_samp = default_angular_samples(g);
  Eigen::MatrixXd mag2 = Eigen::MatrixXd::Zero(n_samp, g.n_r());
  for (const auto& c : stack) mag2 += sample_angular(c, n_samp).cwiseAbs2();
  const double dth = 2.0 * M_PI / n_samp;
  double acc = 0.0;
  for (int j = 0; j < g.n_r(); ++j)
    acc += mag2.col(j).array().pow(0.5 * s).sum() * dth * g.w()[j] * g.r()[j];
  return std::pow(acc, 1.0 / s);
}

/// Anisotropic norm of per-slice component stacks.
inline double lsl_norm_stacks(const DiscGrid& g, const SpaceTimeGrid& tg,
                              const std::vector<Stack>& stacks, const NormOrder& o) {
  double acc = 0.0;
  for (int k = 0; k < tg.n_nodes(); ++k) {
    double a = ls_norm_stack(g, stacks[k], o.s);
    acc += tg.wt(k) * std::pow(a, o.l);
  }
  return std::pow(acc, 1.0 / o.l);
}

inline Stack field_stack(const DiscField& f) {
  Stack s;
  for (int k = 0; k < f.n_components(); ++k) s.push_back(f.component(k));
  return s;
}

/// Stack whose squared magnitude is |grad f|^2 pointwise.
inline Stack gradient_stack(const DiscField& f) {
  const DiscGrid& g = *f.grid();
  if (f.is_scalar()) return {ladder_up(g, f.component(0))};
  auto [u1, u2] = cartesian_components(f);
  return {ladder_up(g, u1), ladder_up(g, u2)};
}

/// Stack whose squared magnitude is |Hess f|^2 pointwise.
inline Stack hessian_stack(const DiscField& f) {
  const DiscGrid& g = *f.grid();
  const double c = 1.0 / std::sqrt(2.0);
  Stack out;
  auto add_scalar = [&](const Eigen::MatrixXcd& u) {
    out.push_back(c * laplacian_modes(g, u));
    out.push_back(c * ladder_up(g, ladder_up(g, u)));
  };
  if (f.is_scalar()) {
    add_scalar(f.component(0));
  } else {
    auto [u1, u2] = cartesian_components(f);
    add_scalar(u1);
    add_scalar(u2);
  }
  return out;
}

template <typename StackFn>
inline double lsl_norm_mapped(const SpaceTimeField& u, const NormOrder& o, StackFn fn) {
  std::vector<Stack> stacks;
  stacks.reserve(u.n_slices());
  for (int k = 0; k < u.n_slices(); ++k) stacks.push_back(fn(u.slice(k)));
  return lsl_norm_stacks(*u.grid(), u.tgrid(), stacks, o);
}

}  // namespace detail

/// Anisotropic Lebesgue norm ( \int ( \int |u|^s dx )^{l/s} dt )^{1/l}.
inline double norm_lsl(const SpaceTimeField& u, const NormOrder& o) {
  return detail::lsl_norm_mapped(u, o, detail::field_stack);
}

/// Spatial gradient part ||grad u||_{L_{s,l}}.
inline double norm_gradient_lsl(const SpaceTimeField& u, const NormOrder& o) {
  return detail::lsl_norm_mapped(u, o, detail::gradient_stack);
}

/// Spatial Hessian part ||grad^2 u||_{L_{s,l}}.
inline double norm_hessian_lsl(const SpaceTimeField& u, const NormOrder& o) {
  return detail::lsl_norm_mapped(u, o, detail::hessian_stack);
}

/// W^{1,0}_{s,l} norm: ||u|| + ||grad u||.
inline double norm_w10(const SpaceTimeField& u, const NormOrder& o) {
  return norm_lsl(u, o) + norm_gradient_lsl(u, o);
}

/// W^{2,1}_{s,l} norm: ||u|| + ||grad u|| + ||grad^2 u|| + ||d_t u||.
inline double norm_w21(const SpaceTimeField& u, const NormOrder& o) {
  return norm_w10(u, o) + norm_hessian_lsl(u, o) +
         norm_lsl(u.time_derivative(), o);
}

/// Spatial L_s norm of one slice (alias of integrate_disc).
inline double norm_ls_disc(const DiscField& f, double s) {
  return integrate_disc(f, s);
}

/// Spatial W^1_s norm ||f||_{L_s} + ||grad f||_{L_s}.
inline double norm_w1s_disc(const DiscField& f, double s) {
  return integrate_disc(f, s) +
         detail::ls_norm_stack(*f.grid(), detail::gradient_stack(f), s);
}

/// H^1 seminorm ||grad f||_{L_2} of a scalar field, exact per mode.
inline double h1_seminorm(const DiscField& f) {
  if (!f.is_scalar()) throw std::invalid_argument("h1_seminorm: scalar only");
  const DiscGrid& g = *f.grid();
  const int M = g.n_theta();
  double acc = 0.0;
  for (int m = -M; m <= M; ++m) {
    Eigen::VectorXcd c = f.mode(m).transpose();
    Eigen::VectorXcd dc = g.D() * c;
    Eigen::ArrayXd e = dc.cwiseAbs2().array() +
                       double(m) * double(m) * c.cwiseAbs2().array() / g.r().array().square();
    acc += 2.0 * M_PI * (e * g.w().array() * g.r().array()).sum();
  }
  return std::sqrt(acc);
}

/// Exact dual norm ||g||_{W^{-1}_2} = ||grad phi||_{L_2}, phi the Dirichlet
/// Poisson solution of g.
inline double dual_norm(const DiscField& g) {
  return h1_seminorm(solve_dirichlet(g).phi);
}

// ---------------------------------------------------------------------------
// Dirichlet eigenmodes of the disc (for the dual-norm estimator and tests).
// ---------------------------------------------------------------------------

/// k-th positive zero of the Bessel function J_m, by scan + bisection.
inline double bessel_zero(int m, int k) {
  if (m < 0 || k < 1) throw std::invalid_argument("bessel_zero: need m >= 0, k >= 1");
  double x = (m == 0) ? 1e-3 : double(m);
  int found = 0;
  double prev = std::cyl_bessel_j(double(m), x);
  const double step = 0.05;
  while (found < k) {
    double x2 = x + step;
    double cur = std::cyl_bessel_j(double(m), x2);
    if (prev == 0.0 || (prev > 0) != (cur > 0)) {
      ++found;
      if (found == k) {
        double a = x, b = x2;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (a + b);
          double fm = std::cyl_bessel_j(double(m), mid);
          if ((fm > 0) == (prev > 0))
            a = mid;
          else
            b = mid;
        }
        return 0.5 * (a + b);
      }
    }
    x = x2;
    prev = cur;
  }
  return x;
}

/// Dirichlet-Laplacian eigenfunction J_m(j_{m,k} r) {cos,sin}(m theta) with
/// eigenvalue j_{m,k}^2. Normalized to unit L_2(Omega) norm.
inline DiscField dirichlet_eigenfunction(DiscGridPtr grid, int m, int k, bool sine,
                                         double* eigenvalue = nullptr) {
  if (m == 0 && sine) throw std::invalid_argument("dirichlet_eigenfunction: m=0 has no sine mode");
  const double j = bessel_zero(m, k);
  if (eigenvalue) *eigenvalue = j * j;
  DiscField f = DiscField::scalar(grid);
  Eigen::VectorXcd prof(grid->n_r());
  for (int i = 0; i < grid->n_r(); ++i)
    prof[i] = std::cyl_bessel_j(double(m), j * grid->r()[i]);
  if (m == 0) {
    f.add_mode(0, prof);
  } else if (sine) {
    f.add_mode(m, prof / Complex(0.0, 2.0));
    f.add_mode(-m, -prof / Complex(0.0, 2.0));
  } else {
    f.add_mode(m, 0.5 * prof);
    f.add_mode(-m, 0.5 * prof);
  }
  double n = l2_norm_disc(f);
  f *= 1.0 / n;
  return f;
}

/// Lower-bound estimator for ||g||_{W^{-1}_s}: maximize \int g w dx /
/// ||grad w||_{L_{s'}} over a fixed dictionary (low Dirichlet eigenmodes and
/// the Poisson solution of g). Exact maximizer is in the dictionary for s=2.
inline double dual_norm_estimate(const DiscField& g, const NormOrder& o) {
  if (!g.is_scalar()) throw std::invalid_argument("dual_norm_estimate: scalar only");
  const double sp = o.s_conj();
  double best = 0.0;
  auto consider = [&](const DiscField& w) {
    double den = detail::ls_norm_stack(*w.grid(), detail::gradient_stack(w), sp);
    if (den <= 0.0) return;
    best = std::max(best, std::abs(inner_product_disc(g, w)) / den);
  };
  consider(solve_dirichlet(g).phi);
  const int m_max = std::min(4, g.grid()->n_theta());
  for (int m = 0; m <= m_max; ++m)
    for (int k = 1; k <= 4; ++k) {
      consider(dirichlet_eigenfunction(g.grid(), m, k, false));
      if (m > 0) consider(dirichlet_eigenfunction(g.grid(), m, k, true));
    }
  return best;
}

// ---------------------------------------------------------------------------
// Boundary traces.
// ---------------------------------------------------------------------------

/// ( \int_0^{2pi} |f(1,theta)|^s dtheta )^{1/s}.
inline double trace_norm(const DiscField& f, double s) {
  if (!f.is_scalar()) throw std::invalid_argument("trace_norm: scalar only");
  BoundaryTrace b = f.trace();
  const int n_samp = std::max(4 * f.n_theta(), 16);
  const double dth = 2.0 * M_PI / n_samp;
  double acc = 0.0;
  for (int k = 0; k < n_samp; ++k)
    acc += dth * std::pow(std::abs(b.eval(2.0 * M_PI * k / n_samp)), s);
  return std::pow(acc, 1.0 / s);
}

/// Multiplicative trace-inequality ratio
/// ||f||_{L_s(bdry)} / ( ||f||_{L_s}^{1/s'} ||f||_{W^1_s}^{1/s} ).
inline double trace_inequality_ratio(const DiscField& f, double s) {
  NormOrder o(s, 2.0);
  double num = trace_norm(f, s);
  double den = std::pow(integrate_disc(f, s), 1.0 / o.s_conj()) *
               std::pow(norm_w1s_disc(f, s), 1.0 / s);
  return num / den;
}

}  // namespace stokeslab
