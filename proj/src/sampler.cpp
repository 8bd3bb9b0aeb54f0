#include "rhmc/sampler.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "rhmc/errors.hpp"

#include <json.hpp>

namespace rhmc {

double preset_step_size(const StepPresetParams& params, Index n) {
  if (!(params.c > 0.0)) throw std::invalid_argument("preset constant c must be > 0");
  if (!(params.lambda_over_eps > 1.0)) {
    throw std::invalid_argument("Lambda/eps must exceed 1");
  }
  const double nn = static_cast<double>(n);
  const double log_ratio = std::log(params.lambda_over_eps);
  switch (params.preset) {
    case StepPreset::PaperIMM:
    case StepPreset::PaperLeapfrog:
      return params.c / (std::pow(nn, 1.5) * log_ratio);
    case StepPreset::PaperIdeal:
      return params.c / (std::pow(nn, 7.0 / 12.0) * std::sqrt(log_ratio));
  }
  throw std::logic_error("unknown step preset");
}

Vector rhmc_step(const Polytope& P, const TargetDensity& target, const Vector& x,
                 const ChainConfig& cfg, Rng& rng, StepRecord& record) {
  record = StepRecord{};
  if (cfg.lazy && rng.uniform01() < 0.5) {
    record.lazy_hold = true;
    return x;
  }

  const MetricState M = MetricState::at(P, x);
  const Vector v = sample_velocity(M, rng);

  PhaseState proposal;
  StepInfo info;
  try {
    std::tie(proposal, info) = integrator_step(P, target, {x, v}, cfg.integrator);
  } catch (const FixedPointDivergence&) {
    record.solver_failed = true;
    return x;
  } catch (const OracleNotConverged&) {
    record.solver_failed = true;
    return x;
  }
  record.fp_iters = info.fp_iters_used;

  const double h_start = hamiltonian(M, target, v);
  double h_end = 0.0;
  try {
    const MetricState M_end = MetricState::at(P, proposal.x);
    h_end = hamiltonian(M_end, target, proposal.v);
  } catch (const NotInterior&) {
    record.solver_failed = true;
    return x;
  }
  record.delta_H = h_end - h_start;
  if (!std::isfinite(record.delta_H)) {
    record.solver_failed = true;
    return x;
  }

  if (cfg.use_filter) {
    const double u = rng.uniform01();
    if (!(std::log(u) < -record.delta_H)) {
      return x;  // filter rejection, record.accepted stays false
    }
  }
  record.accepted = true;
  return proposal.x;
}

std::pair<Matrix, ChainStats> run_chain(const Polytope& P, const TargetDensity& target,
                                        const Vector& x0, const ChainConfig& cfg) {
  if (cfg.steps < 0 || cfg.burn_in < 0) throw std::invalid_argument("negative step count");
  if (cfg.thin < 1) throw std::invalid_argument("thin must be >= 1");
  if (!cfg.use_filter && cfg.integrator.kind != IntegratorKind::Reference) {
    throw std::invalid_argument("the filter may be disabled only with the Reference integrator");
  }
  if (!P.contains_strictly(x0)) throw NotInterior("chain start is not strictly interior");

  ChainConfig run_cfg = cfg;
  if (cfg.step_preset) {
    run_cfg.integrator.step_size = preset_step_size(*cfg.step_preset, P.dim());
  }

  Rng rng(cfg.seed);
  ChainStats stats;
  const long kept = cfg.steps / cfg.thin;
  Matrix samples(kept, P.dim());
  Vector x = x0;
  double abs_energy_sum = 0.0;
  long energy_terms = 0;
  long row = 0;

  for (long i = 0; i < cfg.burn_in + cfg.steps; ++i) {
    StepRecord record;
    x = rhmc_step(P, target, x, run_cfg, rng, record);
    if (record.lazy_hold) {
      ++stats.lazy_holds;
    } else if (record.solver_failed) {
      ++stats.rejected_solver;
    } else {
      abs_energy_sum += std::abs(record.delta_H);
      ++energy_terms;
      if (record.accepted) {
        ++stats.accepted;
      } else {
        ++stats.rejected_filter;
      }
    }
    stats.max_fp_iters = std::max(stats.max_fp_iters, record.fp_iters);
    if (cfg.record_per_step) stats.per_step_log.push_back(record);

    const long post = i - cfg.burn_in + 1;
    if (post >= 1 && post % cfg.thin == 0 && row < kept) {
      samples.row(row++) = x.transpose();
    }
  }
  if (energy_terms > 0) stats.mean_abs_energy_error = abs_energy_sum / energy_terms;
  return {std::move(samples), std::move(stats)};
}

std::string samples_to_csv(const Matrix& samples) {
  std::string out;
  out.reserve(static_cast<size_t>(samples.size()) * 26 + 16);
  char buf[40];
  for (Index i = 0; i < samples.rows(); ++i) {
    for (Index j = 0; j < samples.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", samples(i, j));
      out += buf;
      out += (j + 1 < samples.cols()) ? ',' : '\n';
    }
  }
  return out;
}

std::string stats_to_json(const ChainStats& stats, const std::vector<double>& ess) {
  nlohmann::json j;
  j["accepted"] = stats.accepted;
  j["rejected_filter"] = stats.rejected_filter;
  j["rejected_solver"] = stats.rejected_solver;
  j["lazy_holds"] = stats.lazy_holds;
  j["mean_abs_energy_error"] = stats.mean_abs_energy_error;
  j["max_fp_iters"] = stats.max_fp_iters;
  j["ess_per_coordinate"] = ess;
  return j.dump(2) + "\n";
}

}  // namespace rhmc
