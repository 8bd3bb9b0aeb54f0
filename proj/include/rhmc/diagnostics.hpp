#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rhmc/integrators.hpp"
#include "rhmc/types.hpp"

namespace rhmc {

/// Stage nodes of one integrator step, with the step size that produced
/// them. Times are nondecreasing in [0, h] and every x is interior.
struct TrajectoryRecord {
  std::vector<TrajectoryNode> nodes;
  double h = 0.0;
};

TrajectoryRecord make_trajectory(const StepInfo& info, double h);

/// Forward step, negate velocity, step again, negate. Returns the
/// reconstruction errors (|x_rec - x|_{g(x)}, |v_rec - v|_{g(x)^{-1}}).
std::pair<double, double> reversibility_residual(const Polytope& P, const TargetDensity& target,
                                                 const PhaseState& state,
                                                 const IntegratorConfig& cfg);

/// |H(x_out, v_out) - H(x, v)| for one step of the configured integrator.
double energy_error(const Polytope& P, const TargetDensity& target, const PhaseState& state,
                    const IntegratorConfig& cfg);

struct OrderFit {
  double slope_x = 0.0;   ///< log-log slope of position error vs h
  double slope_E = 0.0;   ///< log-log slope of energy error vs h
  double c_x_hat = 0.0;   ///< max position error / h^2 over the grid
  double c_v_hat = 0.0;   ///< max velocity error / h^2 over the grid
  std::vector<double> position_errors;
  std::vector<double> energy_errors;
};

/// Position/energy errors against the Richardson-checked reference flow
/// over a geometric h grid (>= 3 values), with least-squares slopes.
OrderFit order_fit(const Polytope& P, const TargetDensity& target, const PhaseState& state,
                   const std::vector<double>& h_list, IntegratorConfig cfg);

struct SensitivityReport {
  double det_fd = 0.0;  ///< central-difference det of dx_out/dv
  double bound = 0.0;   ///< h^n / sqrt(|g(x)||g(x_out)|), via log-dets
  double ratio = 0.0;
};

/// Finite-difference check of the sensitivity lower bound (n <= 10).
SensitivityReport jacobian_sensitivity(const Polytope& P, const TargetDensity& target,
                                       const PhaseState& state, const IntegratorConfig& cfg,
                                       double eps_fd);

/// Central-difference determinant of the full phase map
/// (x, v) -> (x_out, v_out); equals 1 for a measure-preserving step.
double phase_map_jacobian_det(const Polytope& P, const TargetDensity& target,
                              const PhaseState& state, const IntegratorConfig& cfg,
                              double eps_fd);

/// Facet-approach functional: max over trajectory nodes of
///   |s_v|_2/(sqrt(n)+2 M1^{1/4}) + |s_v|_4/(2 M1^{1/4})
///     + |s_v|_inf/(sqrt(log n)+2 h sqrt(M1)),
/// where s_v = S_x^{-1} A (dx/dt) and dx/dt = g^{-1} v. Requires n >= 2
/// and M1 >= n.
double regularity(const Polytope& P, const TrajectoryRecord& traj, double M1);

/// Default M1 for regularity: max(n, |alpha|^2_{g(x0)^{-1}}) at the
/// trajectory start.
double default_m1(const Polytope& P, const TargetDensity& target, const Vector& x0);

/// value = |alpha|^2_{g(x)^{-1}}; inside iff value <= 10 n^2 log^2(1/rho).
std::pair<double, bool> good_region_check(const MetricState& M, const Vector& alpha,
                                          Index n, double rho);

struct EssResult {
  std::vector<double> ess;
  std::vector<bool> degenerate;  ///< constant column, ESS reported as 1
};

/// Effective sample size per coordinate via autocovariance with Geyer
/// initial-positive-sequence truncation. Needs >= 100 rows.
EssResult ess(const Matrix& samples);

struct MomentReport {
  std::vector<double> mean;
  std::vector<double> target_mean;
  std::vector<double> mean_z;       ///< (mean - target) / (sd / sqrt(ESS))
  std::vector<double> variance;
  std::vector<double> target_variance;
  std::vector<double> variance_rel_err;
  std::vector<double> ess;
};

/// Compare empirical moments on [lo, hi]^n against the closed-form
/// moments of the density e^{-alpha_i x} truncated to [lo, hi].
MomentReport moment_test_box(const Matrix& samples, const Vector& alpha, double lo, double hi);

/// Closed-form mean/variance of e^{-a x} on [lo, hi] (uniform at a = 0).
double truncated_exp_mean(double a, double lo, double hi);
double truncated_exp_variance(double a, double lo, double hi);

/// Uniform point on a random ray from the interior witness, stopped at
/// `shrink` of the distance to the boundary (capped for unbounded rays).
Vector random_interior_point(const Polytope& P, Rng& rng, double shrink = 0.8);

struct ScBatteryResult {
  int trials = 0;
  int violations = 0;
  double worst_slack = 0.0;  ///< most negative inequality margin observed
};

/// Random battery of the three self-concordance inequalities (metric
/// sandwich, Dg bound, Dg difference bound) with additive slack 1e-9.
ScBatteryResult sc_battery(std::uint64_t seed, int trials);

}  // namespace rhmc
