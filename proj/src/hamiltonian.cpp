#include "rhmc/hamiltonian.hpp"

namespace rhmc {

double hamiltonian(const MetricState& M, const TargetDensity& target, const Vector& v) {
  const double kinetic = 0.5 * v.dot(M.solve(v));
  return target.alpha.dot(M.point()) + kinetic + 0.5 * M.log_det();
}

Vector grad_potential(const MetricState& M, const TargetDensity& target) {
  return target.alpha + 0.5 * M.grad_log_det();
}

Vector grad_kinetic_x(const MetricState& M, const Vector& v) {
  return -0.5 * M.dg_bilinear(M.solve(v));
}

Vector flow_velocity(const MetricState& M, const Vector& v) { return M.solve(v); }

Vector sample_velocity(const MetricState& M, Rng& rng) {
  return M.chol_lower() * rng.normal_vector(M.dim());
}

}  // namespace rhmc
