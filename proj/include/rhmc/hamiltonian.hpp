#pragma once

#include "rhmc/barrier_metric.hpp"
#include "rhmc/rng.hpp"
#include "rhmc/types.hpp"

namespace rhmc {

/// Linear exponent of the target density e^{-alpha.x}; alpha = 0 is the
/// uniform density.
struct TargetDensity {
  Vector alpha;

  static TargetDensity uniform(Index n) { return TargetDensity{Vector::Zero(n)}; }
};

/// Position-velocity pair in Euclidean coordinates. The velocity is the
/// unnormalized draw from N(0, g(x)).
struct PhaseState {
  Vector x;
  Vector v;
};

/// H(x,v) = alpha.x + 1/2 |v|^2_{g^{-1}} + 1/2 log det g(x).
double hamiltonian(const MetricState& M, const TargetDensity& target, const Vector& v);

/// Gradient of the position part H1 = alpha.x + 1/2 log det g:
/// alpha + 1/2 grad log det g.
Vector grad_potential(const MetricState& M, const TargetDensity& target);

/// Position gradient of the kinetic part H2 = 1/2 v^T g^{-1} v:
/// -1/2 Dg[g^{-1}v, g^{-1}v].
Vector grad_kinetic_x(const MetricState& M, const Vector& v);

/// dx/dt of the Hamiltonian flow: g^{-1} v.
Vector flow_velocity(const MetricState& M, const Vector& v);

/// Draw v = L z with z standard normal, so Cov(v) = g(x).
Vector sample_velocity(const MetricState& M, Rng& rng);

}  // namespace rhmc
