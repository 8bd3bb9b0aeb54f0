#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rhmc/integrators.hpp"

namespace rhmc {

/// Asymptotic step-size rules exposed with a user constant c, since the
/// theory constants are far below what works in practice.
enum class StepPreset { PaperIMM, PaperLeapfrog, PaperIdeal };

struct StepPresetParams {
  StepPreset preset = StepPreset::PaperIMM;
  double c = 1.0;
  /// The ratio Lambda/eps entering the logarithmic factor; must be > 1.
  double lambda_over_eps = 100.0;
};

/// h = c / (n^{3/2} log(L/e)) for the implicit integrators,
/// h = c / (n^{7/12} log^{1/2}(L/e)) for the ideal flow.
double preset_step_size(const StepPresetParams& params, Index n);

struct ChainConfig {
  IntegratorConfig integrator;
  long steps = 1000;
  long burn_in = 0;
  long thin = 1;
  std::uint64_t seed = 0;
  bool lazy = false;
  /// Metropolis filter; may be disabled only with the Reference integrator.
  bool use_filter = true;
  /// When set, overrides integrator.step_size at run start.
  std::optional<StepPresetParams> step_preset;
  /// Keep the per-step (dH, accept, fp_iters) log in ChainStats.
  bool record_per_step = false;
};

struct StepRecord {
  double delta_H = 0.0;
  bool accepted = false;
  bool solver_failed = false;
  bool lazy_hold = false;
  int fp_iters = 0;
};

struct ChainStats {
  long accepted = 0;
  long rejected_filter = 0;
  long rejected_solver = 0;
  long lazy_holds = 0;
  double mean_abs_energy_error = 0.0;
  int max_fp_iters = 0;
  std::vector<StepRecord> per_step_log;

  long total_proposals() const {
    return accepted + rejected_filter + rejected_solver + lazy_holds;
  }
};

/// One Markov-chain transition: refresh v ~ N(0, g(x)), run the configured
/// integrator, accept with probability min(1, e^{-dH}) tested in the log
/// domain. Integrator failures are absorbed as rejections.
Vector rhmc_step(const Polytope& P, const TargetDensity& target, const Vector& x,
                 const ChainConfig& cfg, Rng& rng, StepRecord& record);

/// Run burn_in + steps transitions from x0 and record every thin-th
/// post-burn-in position as a row of the returned matrix.
std::pair<Matrix, ChainStats> run_chain(const Polytope& P, const TargetDensity& target,
                                        const Vector& x0, const ChainConfig& cfg);

/// One row per sample, 17 significant digits, '.' decimal, LF endings.
std::string samples_to_csv(const Matrix& samples);

/// {accepted, rejected_filter, rejected_solver, mean_abs_energy_error,
///  ess_per_coordinate} sidecar.
std::string stats_to_json(const ChainStats& stats, const std::vector<double>& ess);

}  // namespace rhmc
