/// @file field.hpp
/// @brief Scalar/vector fields on the disc in Fourier-in-angle form, boundary
/// traces on the circle, and time-indexed sequences of fields.
#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "grid.hpp"

namespace stokeslab {

using Complex = std::complex<double>;

enum class FieldRank { Scalar, Vector };

/// Function on the unit circle stored as Fourier coefficients c_m for
/// |m| <= n_theta. Real-valued traces satisfy c_{-m} = conj(c_m).
class BoundaryTrace {
 public:
  BoundaryTrace() = default;
  explicit BoundaryTrace(int n_theta)
      : n_theta_(n_theta), c_(Eigen::VectorXcd::Zero(2 * n_theta + 1)) {}

  int n_theta() const { return n_theta_; }
  Complex mode(int m) const {
    return (std::abs(m) <= n_theta_) ? c_[m + n_theta_] : Complex(0.0);
  }
  Complex& mode_ref(int m) { return c_[m + n_theta_]; }
  const Eigen::VectorXcd& coeffs() const { return c_; }
  Eigen::VectorXcd& coeffs() { return c_; }

  /// Point evaluation at angle theta.
  double eval(double theta) const {
    Complex s = 0.0;
    for (int m = -n_theta_; m <= n_theta_; ++m)
      s += mode(m) * std::polar(1.0, m * theta);
    return s.real();
  }

  /// Mean value over the circle, divided by 2*pi (the zeroth coefficient).
  Complex mean_coeff() const { return mode(0); }

  /// sqrt( \int_0^{2pi} |b|^2 dtheta ) via Parseval.
  double l2() const { return std::sqrt(2.0 * M_PI * c_.squaredNorm()); }

  double max_conjugate_defect() const {
    double d = 0.0;
    for (int m = 1; m <= n_theta_; ++m)
      d = std::max(d, std::abs(mode(-m) - std::conj(mode(m))));
    return d;
  }

 private:
  int n_theta_ = 0;
  Eigen::VectorXcd c_;
};

/// Field on the disc: per-mode complex radial profiles on the grid nodes.
/// Scalar fields have one component; vector fields carry polar components
/// (w_r, w_theta). Mode matrices are (2*n_theta+1) x n_r with row index
/// m + n_theta.
class DiscField {
 public:
  DiscField() = default;
  DiscField(DiscGridPtr grid, FieldRank rank) : grid_(std::move(grid)), rank_(rank) {
    const int rows = grid_->n_modes(), cols = grid_->n_r();
    comp_.resize(rank_ == FieldRank::Scalar ? 1 : 2,
                 Eigen::MatrixXcd::Zero(rows, cols));
  }

  static DiscField scalar(DiscGridPtr grid) { return DiscField(std::move(grid), FieldRank::Scalar); }
  static DiscField vector(DiscGridPtr grid) { return DiscField(std::move(grid), FieldRank::Vector); }

  const DiscGridPtr& grid() const { return grid_; }
  FieldRank rank() const { return rank_; }
  bool is_scalar() const { return rank_ == FieldRank::Scalar; }
  int n_components() const { return static_cast<int>(comp_.size()); }
  int n_theta() const { return grid_->n_theta(); }

  Eigen::MatrixXcd& component(int k) { return comp_.at(k); }
  const Eigen::MatrixXcd& component(int k) const { return comp_.at(k); }

  /// Radial profile of mode m (component k). Row view into the mode matrix.
  auto mode(int m, int k = 0) { return comp_.at(k).row(m + grid_->n_theta()); }
  auto mode(int m, int k = 0) const { return comp_.at(k).row(m + grid_->n_theta()); }

  bool in_range(int m) const { return std::abs(m) <= grid_->n_theta(); }

  /// Add c(r) * e^{i m theta} to component k (no-op if m out of range).
  void add_mode(int m, const Eigen::VectorXcd& c, int k = 0) {
    if (in_range(m)) comp_.at(k).row(m + grid_->n_theta()) += c.transpose();
  }

  /// Boundary trace of component k (values at the node r = 1).
  BoundaryTrace trace(int k = 0) const {
    BoundaryTrace b(grid_->n_theta());
    b.coeffs() = comp_.at(k).col(grid_->n_r() - 1);
    return b;
  }

  /// Largest violation of the real-valuedness constraint c_{-m} = conj(c_m).
  double max_conjugate_defect() const {
    double d = 0.0;
    const int M = grid_->n_theta();
    for (const auto& c : comp_)
      for (int m = 0; m <= M; ++m)
        d = std::max(d, (c.row(-m + M) - c.row(m + M).conjugate()).cwiseAbs().maxCoeff());
    return d;
  }

  /// Point evaluation of component k at (r_j, theta) for radial node j.
  double eval_node(int j, double theta, int k = 0) const {
    const int M = grid_->n_theta();
    Complex s = 0.0;
    for (int m = -M; m <= M; ++m)
      s += comp_.at(k)(m + M, j) * std::polar(1.0, m * theta);
    return s.real();
  }

  DiscField& operator+=(const DiscField& o) {
    check_compatible(o);
    for (int k = 0; k < n_components(); ++k) comp_[k] += o.comp_[k];
    return *this;
  }
  DiscField& operator-=(const DiscField& o) {
    check_compatible(o);
    for (int k = 0; k < n_components(); ++k) comp_[k] -= o.comp_[k];
    return *this;
  }
  DiscField& operator*=(double a) {
    for (auto& c : comp_) c *= a;
    return *this;
  }
  friend DiscField operator+(DiscField a, const DiscField& b) { return a += b; }
  friend DiscField operator-(DiscField a, const DiscField& b) { return a -= b; }
  friend DiscField operator*(double a, DiscField f) { return f *= a; }

  void check_compatible(const DiscField& o) const {
    if (!grid_ || !o.grid_ || !(*grid_ == *o.grid_) || rank_ != o.rank_)
      throw std::invalid_argument("DiscField: incompatible operands");
  }

 private:
  DiscGridPtr grid_;
  FieldRank rank_ = FieldRank::Scalar;
  std::vector<Eigen::MatrixXcd> comp_;
};

/// One DiscField per node of a uniform time grid.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  SpaceTimeField(SpaceTimeGrid tgrid, std::vector<DiscField> slices)
      : tgrid_(tgrid), slices_(std::move(slices)) {
    if (static_cast<int>(slices_.size()) != tgrid_.n_nodes())
      throw std::invalid_argument("SpaceTimeField: slice count != n_t + 1");
    for (const auto& s : slices_) slices_.front().check_compatible(s);
  }
  SpaceTimeField(SpaceTimeGrid tgrid, DiscGridPtr grid, FieldRank rank)
      : tgrid_(tgrid), slices_(tgrid.n_nodes(), DiscField(std::move(grid), rank)) {}

  const SpaceTimeGrid& tgrid() const { return tgrid_; }
  int n_slices() const { return static_cast<int>(slices_.size()); }
  DiscField& slice(int k) { return slices_.at(k); }
  const DiscField& slice(int k) const { return slices_.at(k); }
  const DiscGridPtr& grid() const { return slices_.front().grid(); }
  FieldRank rank() const { return slices_.front().rank(); }

  SpaceTimeField& operator+=(const SpaceTimeField& o) {
    require_same_tgrid(o);
    for (int k = 0; k < n_slices(); ++k) slices_[k] += o.slices_[k];
    return *this;
  }
  SpaceTimeField& operator-=(const SpaceTimeField& o) {
    require_same_tgrid(o);
    for (int k = 0; k < n_slices(); ++k) slices_[k] -= o.slices_[k];
    return *this;
  }
  friend SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
  friend SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }

  void require_same_tgrid(const SpaceTimeField& o) const {
    if (!(tgrid_ == o.tgrid_))
      throw std::invalid_argument("SpaceTimeField: time grids differ");
  }

  /// Second-order finite-difference time derivative (centered inside,
  /// one-sided at the endpoints). Requires at least 3 time steps.
  SpaceTimeField time_derivative() const {
    if (tgrid_.n_t < 3)
      throw std::invalid_argument("time_derivative: n_t < 3 not supported");
    const double dt = tgrid_.dt();
    std::vector<DiscField> out;
    out.reserve(n_slices());
    for (int k = 0; k < n_slices(); ++k) {
      DiscField d(grid(), rank());
      if (k == 0) {
        d += (-1.5 / dt) * slices_[0];
        d += (2.0 / dt) * slices_[1];
        d += (-0.5 / dt) * slices_[2];
      } else if (k == n_slices() - 1) {
        d += (1.5 / dt) * slices_[k];
        d += (-2.0 / dt) * slices_[k - 1];
        d += (0.5 / dt) * slices_[k - 2];
      } else {
        d += (0.5 / dt) * slices_[k + 1];
        d += (-0.5 / dt) * slices_[k - 1];
      }
      out.push_back(std::move(d));
    }
    return SpaceTimeField(tgrid_, std::move(out));
  }

 private:
  SpaceTimeGrid tgrid_;
  std::vector<DiscField> slices_;
};

}  // namespace stokeslab
