/// @file grid.hpp
/// @brief Discretization of the unit disc (Fourier in angle, Gauss-Radau in
/// radius) and of the space-time cylinder.
#pragma once

#include <memory>
#include <stdexcept>

#include "quadrature.hpp"

namespace stokeslab {

/// Radial-angular grid on the unit disc. Radial nodes are the right
/// Gauss-Radau points on (0, 1], so the boundary r = 1 carries a node and
/// traces are read off directly. Angular content is spectral: fields are
/// resolved for Fourier modes |m| <= n_theta.
class DiscGrid {
 public:
  DiscGrid(int n_r, int n_theta) : n_r_(n_r), n_theta_(n_theta) {
    if (n_r < 4) throw std::invalid_argument("DiscGrid: n_r < 4");
    if (n_theta < 1) throw std::invalid_argument("DiscGrid: n_theta < 1");
    Quadrature1D q = gauss_radau_right(n_r);
    r_ = q.nodes;
    w_ = q.weights;
    rx_.resize(n_r + 1);
    rx_[0] = 0.0;
    rx_.tail(n_r) = r_;
    D_ = differentiation_matrix(r_);
    Dx_ = differentiation_matrix(rx_);
  }

  static std::shared_ptr<const DiscGrid> make(int n_r, int n_theta) {
    return std::make_shared<const DiscGrid>(n_r, n_theta);
  }

  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  int n_modes() const { return 2 * n_theta_ + 1; }

  /// Radial nodes in (0, 1], strictly increasing, last node exactly 1.
  const Eigen::VectorXd& r() const { return r_; }
  /// Radial quadrature weights for \int_0^1 f(r) dr (positive).
  const Eigen::VectorXd& w() const { return w_; }
  /// Extended node set {0} u r, used by the radial boundary-value solvers.
  const Eigen::VectorXd& rx() const { return rx_; }
  /// Differentiation matrix on the grid nodes.
  const Eigen::MatrixXd& D() const { return D_; }
  /// Differentiation matrix on the extended nodes.
  const Eigen::MatrixXd& Dx() const { return Dx_; }

  /// Quadrature of a radial profile against the disc measure r dr.
  double integrate_radial(const Eigen::VectorXd& f) const {
    return (w_.array() * r_.array() * f.array()).sum();
  }

  bool operator==(const DiscGrid& o) const {
    return n_r_ == o.n_r_ && n_theta_ == o.n_theta_;
  }

 private:
  int n_r_, n_theta_;
  Eigen::VectorXd r_, w_, rx_;
  Eigen::MatrixXd D_, Dx_;
};

using DiscGridPtr = std::shared_ptr<const DiscGrid>;

/// Uniform time grid on (t_start, t_end) with n_t steps (n_t + 1 nodes).
struct SpaceTimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int n_t = 1;

  SpaceTimeGrid() = default;
  SpaceTimeGrid(double a, double b, int n) : t_start(a), t_end(b), n_t(n) {
    if (!(b > a) || n < 1)
      throw std::invalid_argument("SpaceTimeGrid: need t_end > t_start, n_t >= 1");
  }

  double dt() const { return (t_end - t_start) / n_t; }
  double t(int k) const { return t_start + k * dt(); }
  int n_nodes() const { return n_t + 1; }

  /// Trapezoid weight of time node k.
  double wt(int k) const { return (k == 0 || k == n_t) ? 0.5 * dt() : dt(); }

  bool operator==(const SpaceTimeGrid& o) const {
    return t_start == o.t_start && t_end == o.t_end && n_t == o.n_t;
  }
};

}  // namespace stokeslab
