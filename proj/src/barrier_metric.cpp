#include "rhmc/barrier_metric.hpp"

#include <cmath>

#include "rhmc/errors.hpp"

namespace rhmc {

MetricState MetricState::at(const Polytope& P, const Vector& x) {
  if (x.size() != P.dim()) throw NotInterior("point has wrong dimension");
  MetricState state;
  state.x_ = x;
  state.s_ = P.slacks(x);
  const double floor = 1e-12 * (1.0 + x.cwiseAbs().maxCoeff());
  if (!(state.s_.minCoeff() > floor)) {
    throw NotInterior("slack " + std::to_string(state.s_.minCoeff()) +
                      " at or below interior floor");
  }
  state.Ax_ = state.s_.cwiseInverse().asDiagonal() * P.constraint_matrix();
  state.llt_.compute(Matrix(state.Ax_.transpose() * state.Ax_));
  if (state.llt_.info() != Eigen::Success) {
    throw FactorizationFailure("Cholesky breakdown of the barrier Hessian");
  }
  state.logdet_ = 2.0 * Matrix(state.llt_.matrixL()).diagonal().array().log().sum();
  return state;
}

Vector MetricState::apply(const Vector& u) const {
  return Ax_.transpose() * (Ax_ * u);
}

Vector MetricState::solve(const Vector& w) const { return llt_.solve(w); }

Vector MetricState::grad_log_det() const {
  return -2.0 * (Ax_.transpose() * leverage_scores());
}

Vector MetricState::dg_bilinear(const Vector& u) const {
  const Vector su = Ax_ * u;
  return -2.0 * (Ax_.transpose() * su.cwiseProduct(su).eval());
}

Vector MetricState::leverage_scores() const {
  // Columns of W solve g W = A_x^T, so sigma_i = row_i(A_x) . col_i(W).
  const Matrix W = llt_.solve(Matrix(Ax_.transpose()));
  return (Ax_.array() * W.transpose().array()).rowwise().sum();
}

double MetricState::velocity_norm(const Vector& v) const {
  return std::sqrt(std::max(0.0, v.dot(solve(v))));
}

double MetricState::position_norm(const Vector& u) const {
  return (Ax_ * u).norm();
}

}  // namespace rhmc
