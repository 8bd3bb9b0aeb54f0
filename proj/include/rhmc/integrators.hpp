#pragma once

#include <utility>
#include <vector>

#include "rhmc/hamiltonian.hpp"
#include "rhmc/polytope.hpp"
#include "rhmc/types.hpp"

namespace rhmc {

enum class IntegratorKind { ImplicitMidpoint, GeneralizedLeapfrog, Reference };

struct IntegratorConfig {
  IntegratorKind kind = IntegratorKind::ImplicitMidpoint;
  /// Step size h > 0 (h = 0 is allowed and maps each state to itself).
  double step_size = 0.01;
  /// Fixed-point convergence threshold, measured in the local norms at
  /// the step's start point.
  double fp_tolerance = 1e-10;
  int fp_max_iters = 50;
  /// Substep count for the reference flow (>= 16); the Richardson check
  /// doubles it internally.
  int reference_substeps = 64;
};

/// One stage node of a single integrator step, time in [0, h].
struct TrajectoryNode {
  double t;
  Vector x;
  Vector v;
};

struct StepInfo {
  int fp_iters_used = 0;
  bool converged = true;
  /// Stage points visited by the step, endpoints included.
  std::vector<TrajectoryNode> nodes;
};

/// Implicit midpoint step: explicit half-kick of the position part,
/// midpoint fixed point for the kinetic part, explicit half-kick.
std::pair<PhaseState, StepInfo> imm_step(const Polytope& P, const TargetDensity& target,
                                         const PhaseState& state,
                                         const IntegratorConfig& cfg);

/// Generalized Leapfrog (Stormer-Verlet) step: implicit velocity half
/// update, implicit position update, explicit velocity half update.
std::pair<PhaseState, StepInfo> leapfrog_step(const Polytope& P, const TargetDensity& target,
                                              const PhaseState& state,
                                              const IntegratorConfig& cfg);

/// High-accuracy endpoint of the exact Hamiltonian flow: classical RK4
/// over cfg.reference_substeps substeps, accepted only when doubling the
/// substeps moves the endpoint by <= 1e-9 in the start-point local norms.
PhaseState reference_flow(const Polytope& P, const TargetDensity& target,
                          const PhaseState& state, const IntegratorConfig& cfg);

/// Dispatch on cfg.kind; Reference reports a two-node StepInfo.
std::pair<PhaseState, StepInfo> integrator_step(const Polytope& P, const TargetDensity& target,
                                                const PhaseState& state,
                                                const IntegratorConfig& cfg);

}  // namespace rhmc
