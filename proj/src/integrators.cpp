#include "rhmc/integrators.hpp"

#include <cmath>
#include <string>

#include "rhmc/errors.hpp"

namespace rhmc {
namespace {

void check_config(const IntegratorConfig& cfg) {
  if (!(cfg.step_size >= 0.0) || !std::isfinite(cfg.step_size)) {
    throw std::invalid_argument("step size must be finite and >= 0");
  }
  if (!(cfg.fp_tolerance > 0.0)) throw std::invalid_argument("fp_tolerance must be > 0");
  if (cfg.fp_max_iters < 1) throw std::invalid_argument("fp_max_iters must be >= 1");
}

MetricState interior_metric(const Polytope& P, const Vector& x, const char* where) {
  try {
    return MetricState::at(P, x);
  } catch (const NotInterior&) {
    throw FixedPointDivergence(std::string(where) + ": iterate left the strict interior");
  }
}

}  // namespace

std::pair<PhaseState, StepInfo> imm_step(const Polytope& P, const TargetDensity& target,
                                         const PhaseState& state,
                                         const IntegratorConfig& cfg) {
  check_config(cfg);
  const double h = cfg.step_size;
  const MetricState start = MetricState::at(P, state.x);

  StepInfo info;
  info.nodes.push_back({0.0, state.x, state.v});

  // Half-kick with the position part H1.
  const Vector& x_a = state.x;
  const Vector v_a = state.v - (h / 2.0) * grad_potential(start, target);
  info.nodes.push_back({0.0, x_a, v_a});

  // Midpoint fixed point for the kinetic part H2.
  Vector x_b = x_a;
  Vector v_b = v_a;
  Vector x_mid = x_a;
  Vector v_mid = v_a;
  bool converged = false;
  for (int it = 0; it < cfg.fp_max_iters; ++it) {
    x_mid = 0.5 * (x_a + x_b);
    v_mid = 0.5 * (v_a + v_b);
    const MetricState mid = interior_metric(P, x_mid, "imm midpoint");
    const Vector rate = mid.solve(v_mid);
    const Vector x_next = x_a + h * rate;
    const Vector v_next = v_a + (h / 2.0) * mid.dg_bilinear(rate);
    const double dx = start.position_norm(x_next - x_b);
    const double dv = start.velocity_norm(v_next - v_b);
    x_b = x_next;
    v_b = v_next;
    info.fp_iters_used = it + 1;
    if (!P.contains_strictly(x_b)) {
      throw FixedPointDivergence("imm: proposal left the strict interior");
    }
    if (dx <= cfg.fp_tolerance && dv <= cfg.fp_tolerance) {
      converged = true;
      break;
    }
  }
  info.converged = converged;
  if (!converged) {
    throw FixedPointDivergence("imm: no fixed point within " +
                               std::to_string(cfg.fp_max_iters) + " sweeps");
  }
  info.nodes.push_back({h / 2.0, x_mid, v_mid});
  info.nodes.push_back({h, x_b, v_b});

  // Closing half-kick, evaluated at the new position.
  const MetricState end = interior_metric(P, x_b, "imm endpoint");
  const Vector v_out = v_b - (h / 2.0) * grad_potential(end, target);
  info.nodes.push_back({h, x_b, v_out});
  return {PhaseState{x_b, v_out}, info};
}

std::pair<PhaseState, StepInfo> leapfrog_step(const Polytope& P, const TargetDensity& target,
                                              const PhaseState& state,
                                              const IntegratorConfig& cfg) {
  check_config(cfg);
  const double h = cfg.step_size;
  const MetricState start = MetricState::at(P, state.x);

  StepInfo info;
  info.nodes.push_back({0.0, state.x, state.v});

  // Implicit velocity half update: v_half = v - h/2 dH/dx(x, v_half).
  const Vector pot = grad_potential(start, target);
  Vector v_half = state.v;
  bool converged = false;
  for (int it = 0; it < cfg.fp_max_iters; ++it) {
    const Vector v_next = state.v - (h / 2.0) * (pot + grad_kinetic_x(start, v_half));
    const double dv = start.velocity_norm(v_next - v_half);
    v_half = v_next;
    info.fp_iters_used = it + 1;
    if (dv <= cfg.fp_tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    info.converged = false;
    throw FixedPointDivergence("leapfrog velocity stage: no fixed point within " +
                               std::to_string(cfg.fp_max_iters) + " sweeps");
  }
  info.nodes.push_back({0.0, state.x, v_half});

  // Implicit position update: x1 = x + h/2 (g(x)^{-1} + g(x1)^{-1}) v_half.
  const Vector rate_start = start.solve(v_half);
  Vector x_new = state.x;
  converged = false;
  for (int it = 0; it < cfg.fp_max_iters; ++it) {
    const MetricState trial = interior_metric(P, x_new, "leapfrog position stage");
    const Vector x_next = state.x + (h / 2.0) * (rate_start + trial.solve(v_half));
    const double dx = start.position_norm(x_next - x_new);
    x_new = x_next;
    info.fp_iters_used += 1;
    if (!P.contains_strictly(x_new)) {
      throw FixedPointDivergence("leapfrog: proposal left the strict interior");
    }
    if (dx <= cfg.fp_tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    info.converged = false;
    throw FixedPointDivergence("leapfrog position stage: no fixed point within " +
                               std::to_string(cfg.fp_max_iters) + " sweeps");
  }
  info.nodes.push_back({h, x_new, v_half});

  // Explicit velocity half update at the new position.
  const MetricState end = interior_metric(P, x_new, "leapfrog endpoint");
  const Vector v_out = v_half - (h / 2.0) * (grad_potential(end, target) + grad_kinetic_x(end, v_half));
  info.nodes.push_back({h, x_new, v_out});
  return {PhaseState{x_new, v_out}, info};
}

namespace {

struct PhaseDerivative {
  Vector dx;
  Vector dv;
};

PhaseDerivative hamiltonian_rhs(const Polytope& P, const TargetDensity& target,
                                const Vector& x, const Vector& v) {
  const MetricState M = MetricState::at(P, x);
  return {M.solve(v), -(grad_potential(M, target) + grad_kinetic_x(M, v))};
}

PhaseState rk4_integrate(const Polytope& P, const TargetDensity& target, PhaseState s,
                         double total_time, int substeps) {
  const double dt = total_time / substeps;
  for (int i = 0; i < substeps; ++i) {
    const PhaseDerivative k1 = hamiltonian_rhs(P, target, s.x, s.v);
    const PhaseDerivative k2 =
        hamiltonian_rhs(P, target, s.x + 0.5 * dt * k1.dx, s.v + 0.5 * dt * k1.dv);
    const PhaseDerivative k3 =
        hamiltonian_rhs(P, target, s.x + 0.5 * dt * k2.dx, s.v + 0.5 * dt * k2.dv);
    const PhaseDerivative k4 = hamiltonian_rhs(P, target, s.x + dt * k3.dx, s.v + dt * k3.dv);
    s.x += (dt / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    s.v += (dt / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  }
  return s;
}

}  // namespace

PhaseState reference_flow(const Polytope& P, const TargetDensity& target,
                          const PhaseState& state, const IntegratorConfig& cfg) {
  check_config(cfg);
  if (cfg.reference_substeps < 16) {
    throw std::invalid_argument("reference_substeps must be >= 16");
  }
  const MetricState start = MetricState::at(P, state.x);
  if (cfg.step_size == 0.0) return state;

  const PhaseState coarse = rk4_integrate(P, target, state, cfg.step_size, cfg.reference_substeps);
  const PhaseState fine = rk4_integrate(P, target, state, cfg.step_size, 2 * cfg.reference_substeps);
  const double drift_x = start.position_norm(coarse.x - fine.x);
  const double drift_v = start.velocity_norm(coarse.v - fine.v);
  if (drift_x > 1e-9 || drift_v > 1e-9) {
    throw OracleNotConverged("Richardson doubling moved the endpoint by (" +
                             std::to_string(drift_x) + ", " + std::to_string(drift_v) + ")");
  }
  return fine;
}

std::pair<PhaseState, StepInfo> integrator_step(const Polytope& P, const TargetDensity& target,
                                                const PhaseState& state,
                                                const IntegratorConfig& cfg) {
  switch (cfg.kind) {
    case IntegratorKind::ImplicitMidpoint:
      return imm_step(P, target, state, cfg);
    case IntegratorKind::GeneralizedLeapfrog:
      return leapfrog_step(P, target, state, cfg);
    case IntegratorKind::Reference: {
      PhaseState out = reference_flow(P, target, state, cfg);
      StepInfo info;
      info.nodes.push_back({0.0, state.x, state.v});
      info.nodes.push_back({cfg.step_size, out.x, out.v});
      return {std::move(out), info};
    }
  }
  throw std::logic_error("unknown integrator kind");
}

}  // namespace rhmc
