#include "rhmc/diagnostics.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "rhmc/errors.hpp"
#include "rhmc/rng.hpp"

namespace rhmc {
namespace {

double lsq_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TrajectoryRecord make_trajectory(const StepInfo& info, double h) {
  return TrajectoryRecord{info.nodes, h};
}

std::pair<double, double> reversibility_residual(const Polytope& P, const TargetDensity& target,
                                                 const PhaseState& state,
                                                 const IntegratorConfig& cfg) {
  const MetricState start = MetricState::at(P, state.x);
  const PhaseState forward = integrator_step(P, target, state, cfg).first;
  const PhaseState back =
      integrator_step(P, target, {forward.x, -forward.v}, cfg).first;
  const Vector x_rec = back.x;
  const Vector v_rec = -back.v;
  return {start.position_norm(x_rec - state.x), start.velocity_norm(v_rec - state.v)};
}

double energy_error(const Polytope& P, const TargetDensity& target, const PhaseState& state,
                    const IntegratorConfig& cfg) {
  const MetricState start = MetricState::at(P, state.x);
  const PhaseState out = integrator_step(P, target, state, cfg).first;
  const MetricState end = MetricState::at(P, out.x);
  return std::abs(hamiltonian(end, target, out.v) - hamiltonian(start, target, state.v));
}

OrderFit order_fit(const Polytope& P, const TargetDensity& target, const PhaseState& state,
                   const std::vector<double>& h_list, IntegratorConfig cfg) {
  if (h_list.size() < 3) throw std::invalid_argument("order fit needs >= 3 step sizes");
  const MetricState start = MetricState::at(P, state.x);
  const double h_start = hamiltonian(start, target, state.v);

  OrderFit fit;
  std::vector<double> log_h, log_ex, log_eE;
  std::vector<double> vel_errors;
  IntegratorConfig ref_cfg = cfg;
  ref_cfg.kind = IntegratorKind::Reference;
  for (double h : h_list) {
    cfg.step_size = h;
    ref_cfg.step_size = h;
    const PhaseState out = integrator_step(P, target, state, cfg).first;
    const PhaseState ref = reference_flow(P, target, state, ref_cfg);
    const double ex = start.position_norm(out.x - ref.x);
    const double ev = start.velocity_norm(out.v - ref.v);
    const MetricState end = MetricState::at(P, out.x);
    const double eE = std::abs(hamiltonian(end, target, out.v) - h_start);
    fit.position_errors.push_back(ex);
    fit.energy_errors.push_back(eE);
    vel_errors.push_back(ev);
    fit.c_x_hat = std::max(fit.c_x_hat, ex / (h * h));
    fit.c_v_hat = std::max(fit.c_v_hat, ev / (h * h));
    log_h.push_back(std::log(h));
    log_ex.push_back(std::log(std::max(ex, 1e-300)));
    log_eE.push_back(std::log(std::max(eE, 1e-300)));
  }
  fit.slope_x = lsq_slope(log_h, log_ex);
  fit.slope_E = lsq_slope(log_h, log_eE);
  return fit;
}

SensitivityReport jacobian_sensitivity(const Polytope& P, const TargetDensity& target,
                                       const PhaseState& state, const IntegratorConfig& cfg,
                                       double eps_fd) {
  const Index n = state.x.size();
  if (n > 10) throw std::invalid_argument("dense FD Jacobian limited to n <= 10");
  const MetricState start = MetricState::at(P, state.x);
  const PhaseState center = integrator_step(P, target, state, cfg).first;
  const MetricState end = MetricState::at(P, center.x);

  Matrix jac(n, n);
  for (Index k = 0; k < n; ++k) {
    PhaseState plus = state;
    PhaseState minus = state;
    plus.v[k] += eps_fd;
    minus.v[k] -= eps_fd;
    const Vector x_plus = integrator_step(P, target, plus, cfg).first.x;
    const Vector x_minus = integrator_step(P, target, minus, cfg).first.x;
    jac.col(k) = (x_plus - x_minus) / (2.0 * eps_fd);
  }

  SensitivityReport report;
  report.det_fd = std::abs(Eigen::PartialPivLU<Matrix>(jac).determinant());
  // h^n / sqrt(|g(x)||g(x_out)|) assembled in the log domain.
  const double log_bound = static_cast<double>(n) * std::log(cfg.step_size) -
                           0.5 * (start.log_det() + end.log_det());
  report.bound = std::exp(log_bound);
  report.ratio = report.det_fd / report.bound;
  return report;
}

double phase_map_jacobian_det(const Polytope& P, const TargetDensity& target,
                              const PhaseState& state, const IntegratorConfig& cfg,
                              double eps_fd) {
  const Index n = state.x.size();
  Matrix jac(2 * n, 2 * n);
  for (Index k = 0; k < 2 * n; ++k) {
    PhaseState plus = state;
    PhaseState minus = state;
    if (k < n) {
      plus.x[k] += eps_fd;
      minus.x[k] -= eps_fd;
    } else {
      plus.v[k - n] += eps_fd;
      minus.v[k - n] -= eps_fd;
    }
    const PhaseState out_p = integrator_step(P, target, plus, cfg).first;
    const PhaseState out_m = integrator_step(P, target, minus, cfg).first;
    jac.col(k).head(n) = (out_p.x - out_m.x) / (2.0 * eps_fd);
    jac.col(k).tail(n) = (out_p.v - out_m.v) / (2.0 * eps_fd);
  }
  return Eigen::PartialPivLU<Matrix>(jac).determinant();
}

double regularity(const Polytope& P, const TrajectoryRecord& traj, double M1) {
  const Index n = P.dim();
  if (n < 2) throw DomainError("regularity requires n >= 2");
  if (!(M1 >= static_cast<double>(n))) throw DomainError("regularity requires M1 >= n");
  const double root_n = std::sqrt(static_cast<double>(n));
  const double m1_quarter = std::pow(M1, 0.25);
  const double root_log_n = std::sqrt(std::log(static_cast<double>(n)));
  const double denom_inf = root_log_n + 2.0 * traj.h * std::sqrt(M1);

  double worst = 0.0;
  for (const TrajectoryNode& node : traj.nodes) {
    const MetricState M = MetricState::at(P, node.x);
    const Vector facet_rate = M.scaled_rows() * M.solve(node.v);  // s_v of dx/dt
    const double l2 = facet_rate.norm();
    const double l4 = std::pow(facet_rate.array().abs().pow(4).sum(), 0.25);
    const double linf = facet_rate.cwiseAbs().maxCoeff();
    const double value = l2 / (root_n + 2.0 * m1_quarter) + l4 / (2.0 * m1_quarter) +
                         linf / denom_inf;
    worst = std::max(worst, value);
  }
  return worst;
}

double default_m1(const Polytope& P, const TargetDensity& target, const Vector& x0) {
  const MetricState M = MetricState::at(P, x0);
  const double grad_norm_sq = target.alpha.dot(M.solve(target.alpha));
  return std::max(static_cast<double>(P.dim()), grad_norm_sq);
}

std::pair<double, bool> good_region_check(const MetricState& M, const Vector& alpha,
                                          Index n, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0,1)");
  const double value = alpha.dot(M.solve(alpha));
  const double log_inv_rho = std::log(1.0 / rho);
  const double threshold = 10.0 * static_cast<double>(n * n) * log_inv_rho * log_inv_rho;
  return {value, value <= threshold};
}

EssResult ess(const Matrix& samples) {
  const Index k = samples.rows();
  if (k < 100) throw InsufficientSamples("ess needs >= 100 samples");
  EssResult result;
  result.ess.resize(samples.cols());
  result.degenerate.assign(samples.cols(), false);

  const Index max_lag = k - 2;
  for (Index c = 0; c < samples.cols(); ++c) {
    const Vector col = samples.col(c).array() - samples.col(c).mean();
    const double gamma0 = col.squaredNorm() / static_cast<double>(k);
    if (gamma0 <= 0.0 || !std::isfinite(gamma0)) {
      result.ess[c] = 1.0;
      result.degenerate[c] = true;
      continue;
    }
    auto acov = [&](Index t) {
      return col.head(k - t).dot(col.tail(k - t)) / static_cast<double>(k);
    };
    // Geyer: sum pair sums Gamma_j = gamma_{2j} + gamma_{2j+1} while positive.
    double tau = -1.0;
    for (Index j = 0; 2 * j + 1 <= max_lag; ++j) {
      const double pair = acov(2 * j) + acov(2 * j + 1);
      if (pair <= 0.0) break;
      tau += 2.0 * pair / gamma0;
    }
    tau = std::max(tau, 1.0);
    result.ess[c] = std::clamp(static_cast<double>(k) / tau, 1.0, static_cast<double>(k));
  }
  return result;
}

double truncated_exp_mean(double a, double lo, double hi) {
  if (std::abs(a) < 1e-10) return 0.5 * (lo + hi);
  const double elo = std::exp(-a * lo);
  const double ehi = std::exp(-a * hi);
  return (lo * elo - hi * ehi) / (elo - ehi) + 1.0 / a;
}

double truncated_exp_variance(double a, double lo, double hi) {
  if (std::abs(a) < 1e-10) {
    const double w = hi - lo;
    return w * w / 12.0;
  }
  const double elo = std::exp(-a * lo);
  const double ehi = std::exp(-a * hi);
  const double z = (elo - ehi) / a;
  const double m1 = ((lo * elo - hi * ehi) / a + z / a) / z;
  const double m2 = ((lo * lo * elo - hi * hi * ehi) / a + 2.0 * m1 * z / a) / z;
  return m2 - m1 * m1;
}

MomentReport moment_test_box(const Matrix& samples, const Vector& alpha, double lo, double hi) {
  const Index k = samples.rows();
  if (k < 100) throw InsufficientSamples("moment test needs >= 100 samples");
  if (alpha.size() != samples.cols()) throw DomainError("alpha dimension mismatch");

  const EssResult e = ess(samples);
  MomentReport report;
  for (Index c = 0; c < samples.cols(); ++c) {
    const double mean = samples.col(c).mean();
    const double var =
        (samples.col(c).array() - mean).square().sum() / static_cast<double>(k - 1);
    const double tmean = truncated_exp_mean(alpha[c], lo, hi);
    const double tvar = truncated_exp_variance(alpha[c], lo, hi);
    const double se = std::sqrt(var / std::max(e.ess[c], 1.0));
    report.mean.push_back(mean);
    report.target_mean.push_back(tmean);
    report.mean_z.push_back(se > 0.0 ? (mean - tmean) / se : 0.0);
    report.variance.push_back(var);
    report.target_variance.push_back(tvar);
    report.variance_rel_err.push_back(std::abs(var - tvar) / tvar);
    report.ess.push_back(e.ess[c]);
  }
  return report;
}

Vector random_interior_point(const Polytope& P, Rng& rng, double shrink) {
  const Vector x0 = P.interior_point();
  const Vector dir = rng.normal_vector(P.dim());
  const Vector along = P.constraint_matrix() * dir;
  const Vector s0 = P.slacks(x0);
  double t_max = 1e3;  // cap handles directions along which P is unbounded
  for (Index i = 0; i < s0.size(); ++i) {
    if (along[i] < 0.0) t_max = std::min(t_max, -s0[i] / along[i]);
  }
  return x0 + (shrink * rng.uniform01() * t_max) * dir;
}

ScBatteryResult sc_battery(std::uint64_t seed, int trials) {
  Rng rng(seed);
  ScBatteryResult result;
  result.trials = trials;
  constexpr double kSlack = 1e-9;
  auto record = [&](double margin) {
    if (margin < -kSlack) ++result.violations;
    result.worst_slack = std::min(result.worst_slack, margin);
  };

  for (int trial = 0; trial < trials; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.next_u64() % 6);
    Polytope P = [&]() {
      switch (rng.next_u64() % 3) {
        case 0:
          return Polytope::hypercube(n, -1.0, 1.0);
        case 1:
          return Polytope::simplex(n);
        default:
          return Polytope::random(n, 2 * n + 2, rng.next_u64());
      }
    }();
    const Vector x = random_interior_point(P, rng);
    const MetricState M = MetricState::at(P, x);

    // Item 1: metric sandwich at y with r = |y - x|_{g(x)} < 1.
    {
      Vector d = rng.normal_vector(n);
      d /= M.position_norm(d);
      const double r = 0.9 * rng.uniform01();
      const Vector y = x + r * d;
      const MetricState My = MetricState::at(P, y);
      Vector w = rng.normal_vector(n);
      w /= M.position_norm(w);
      const double wx = 1.0;  // w normalized in g(x)
      const double wy = std::pow(My.position_norm(w), 2);
      const double shrink = (1.0 - r) * (1.0 - r);
      record(wy - shrink * wx);
      record(wx / shrink - wy);
    }

    // Item 2: |Dg[u,u]|_{g^{-1}} <= 2 |u|_g^2.
    {
      Vector u = rng.normal_vector(n);
      u /= M.position_norm(u);
      record(2.0 - M.velocity_norm(M.dg_bilinear(u)));
    }

    // Item 4: |Dg[u,u] - Dg[w,w]|_{g^{-1}} <= 2 |u-w|_g |u+w|_g.
    {
      Vector u = rng.normal_vector(n);
      u /= M.position_norm(u);
      Vector w = rng.normal_vector(n);
      w /= M.position_norm(w);
      const double lhs = M.velocity_norm(M.dg_bilinear(u) - M.dg_bilinear(w));
      const double rhs = 2.0 * M.position_norm(u - w) * M.position_norm(u + w);
      record(rhs - lhs);
    }
  }
  return result;
}

}  // namespace rhmc
