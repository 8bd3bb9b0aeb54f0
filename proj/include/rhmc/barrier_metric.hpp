#pragma once

#include <Eigen/Cholesky>

#include "rhmc/polytope.hpp"
#include "rhmc/types.hpp"

namespace rhmc {

/// The log-barrier Hessian metric at one strictly interior point.
///
/// With slacks s = Ax - b and scaled rows A_x = S^{-1}A, the metric is
/// g(x) = A_x^T A_x, held here as a dense Cholesky factorization together
/// with the caches every downstream formula needs. One immutable state per
/// point; it is rebuilt at every trajectory node rather than updated.
class MetricState {
 public:
  /// Throws NotInterior when some slack is nonpositive or below
  /// 1e-12 * (1 + |x|_inf), FactorizationFailure on Cholesky breakdown.
  static MetricState at(const Polytope& P, const Vector& x);

  /// g u = A_x^T (A_x u).
  Vector apply(const Vector& u) const;

  /// g^{-1} w via the triangular factors.
  Vector solve(const Vector& w) const;

  /// Gradient of log det g; for the log barrier this is -2 A_x^T sigma
  /// with sigma the leverage scores.
  Vector grad_log_det() const;

  /// Directional metric derivative Dg(x)[u,u], the vector whose k-th
  /// entry is the third barrier differential D^3 phi(x)[u,u,e_k]:
  /// -2 A_x^T ((A_x u) o (A_x u)).
  Vector dg_bilinear(const Vector& u) const;

  /// sigma_i = (A_x g^{-1} A_x^T)_ii; entries lie in [0,1], sum to n.
  Vector leverage_scores() const;

  /// |v|_{g^{-1}}, the velocity/gradient-side local norm.
  double velocity_norm(const Vector& v) const;

  /// |u|_g, the position-side local norm.
  double position_norm(const Vector& u) const;

  const Vector& point() const { return x_; }
  const Vector& slacks() const { return s_; }
  const Matrix& scaled_rows() const { return Ax_; }
  double log_det() const { return logdet_; }
  Index dim() const { return x_.size(); }

  /// Lower-triangular L with L L^T = g, for velocity sampling.
  Matrix chol_lower() const { return llt_.matrixL(); }

 private:
  MetricState() = default;

  Vector x_;
  Vector s_;
  Matrix Ax_;
  Eigen::LLT<Matrix> llt_;
  double logdet_ = 0.0;
};

}  // namespace rhmc
