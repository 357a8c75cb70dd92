/// @file quadrature.hpp
/// @brief 1-D Gauss rules: Gauss-Legendre panels and the Gauss-Radau rule
/// with a fixed node at the right endpoint.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace stokeslab {

struct Quadrature1D {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Gauss-Legendre rule with n points on [a, b].
inline Quadrature1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  // Golub-Welsch on the Legendre Jacobi matrix.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) {
    sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  Quadrature1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()[i];
    double w = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    q.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * x;
    q.weights[i] = 0.5 * (b - a) * w;
  }
  return q;
}

/// Gauss-Radau rule with n points on [0, 1], the last node fixed at 1.
/// Exact for polynomials of degree <= 2n-2; all weights positive, all
/// nodes in (0, 1].
inline Quadrature1D gauss_radau_right(int n) {
  if (n < 2) throw std::invalid_argument("gauss_radau_right: n < 2");
  // Monic Legendre recurrence on [-1,1]: beta0 = 2, beta_k = k^2/(4k^2-1).
  // Gautschi's endpoint modification: replace the last Jacobi diagonal by
  //   a - beta_{n-1} p_{n-2}(a) / p_{n-1}(a)  with a = +1.
  const double a = 1.0;
  std::vector<double> beta(n);
  beta[0] = 2.0;
  for (int k = 1; k < n; ++k) beta[k] = k * k / (4.0 * k * k - 1.0);
  double pm1 = 0.0, p = 1.0;  // p_{-1}, p_0 at a
  for (int k = 0; k < n - 1; ++k) {
    double next = a * p - (k > 0 ? beta[k] : 0.0) * pm1;
    pm1 = p;
    p = next;
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  diag[n - 1] = a - beta[n - 1] * pm1 / p;
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(beta[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  Quadrature1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = 0.5 * (es.eigenvalues()[i] + 1.0);
    q.weights[i] = 0.5 * 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  q.nodes[n - 1] = 1.0;  // snap the prescribed endpoint
  return q;
}

/// Barycentric interpolation weights for a node set (log-scaled products).
inline Eigen::VectorXd barycentric_weights(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd logw(n), sgn(n);
  for (int j = 0; j < n; ++j) {
    double lw = 0.0, s = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      double d = x[j] - x[k];
      lw -= std::log(std::abs(d));
      if (d < 0) s = -s;
    }
    logw[j] = lw;
    sgn[j] = s;
  }
  double m = logw.maxCoeff();
  Eigen::VectorXd w(n);
  for (int j = 0; j < n; ++j) w[j] = sgn[j] * std::exp(logw[j] - m);
  return w;
}

/// Spectral differentiation matrix on arbitrary nodes (barycentric form).
inline Eigen::MatrixXd differentiation_matrix(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd w = barycentric_weights(x);
  Eigen::MatrixXd D(n, n);
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      D(i, j) = (w[j] / w[i]) / (x[i] - x[j]);
      rowsum += D(i, j);
    }
    D(i, i) = -rowsum;
  }
  return D;
}

/// Evaluate the barycentric interpolant of samples f (on nodes x, weights w)
/// at a point t.
inline double barycentric_eval(const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& f, double t) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < x.size(); ++j) {
    double d = t - x[j];
    if (std::abs(d) < 1e-14) return f[j];
    double c = w[j] / d;
    num += c * f[j];
    den += c;
  }
  return num / den;
}

}  // namespace stokeslab
