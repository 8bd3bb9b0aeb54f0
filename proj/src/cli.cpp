#include "rhmc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rhmc/diagnostics.hpp"
#include "rhmc/errors.hpp"
#include "rhmc/sampler.hpp"

namespace rhmc {
namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, sep)) parts.push_back(token);
  return parts;
}

Polytope build_polytope(const RunManifest& m) {
  if (!m.builtin.empty() && !m.polytope_path.empty()) {
    throw std::invalid_argument("give either --polytope or --builtin, not both");
  }
  if (!m.builtin.empty()) {
    const auto parts = split(m.builtin, ':');
    try {
      if (parts.at(0) == "hypercube" && parts.size() == 4) {
        return Polytope::hypercube(std::stol(parts[1]), std::stod(parts[2]),
                                   std::stod(parts[3]));
      }
      if (parts.at(0) == "simplex" && parts.size() == 2) {
        return Polytope::simplex(std::stol(parts[1]));
      }
      if (parts.at(0) == "random" && parts.size() == 4) {
        return Polytope::random(std::stol(parts[1]), std::stol(parts[2]),
                                std::stoull(parts[3]));
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed builtin spec '" + m.builtin + "'");
    }
    throw std::invalid_argument("unknown builtin spec '" + m.builtin + "'");
  }
  if (m.polytope_path.empty()) throw std::invalid_argument("a polytope is required");
  std::ifstream in(m.polytope_path);
  if (!in) throw std::invalid_argument("cannot open polytope file " + m.polytope_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Polytope::parse(buffer.str());
}

TargetDensity build_target(const RunManifest& m, Index n) {
  if (m.alpha_spec.empty()) return TargetDensity::uniform(n);
  std::string body = m.alpha_spec;
  if (body.front() == '@') {
    std::ifstream in(body.substr(1));
    if (!in) throw std::invalid_argument("cannot open alpha file " + body.substr(1));
    std::stringstream buffer;
    buffer << in.rdbuf();
    body = buffer.str();
    for (char& c : body) {
      if (c == '\n' || c == '\t' || c == ' ') c = ',';
    }
  }
  std::vector<double> entries;
  for (const std::string& tok : split(body, ',')) {
    if (tok.empty()) continue;
    size_t used = 0;
    entries.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw std::invalid_argument("bad alpha entry '" + tok + "'");
  }
  if (static_cast<Index>(entries.size()) != n) {
    throw std::invalid_argument("alpha has " + std::to_string(entries.size()) +
                                " entries, polytope dimension is " + std::to_string(n));
  }
  TargetDensity t{Vector(n)};
  for (Index i = 0; i < n; ++i) t.alpha[i] = entries[i];
  return t;
}

IntegratorKind parse_kind(const std::string& name) {
  if (name == "imm") return IntegratorKind::ImplicitMidpoint;
  if (name == "leapfrog") return IntegratorKind::GeneralizedLeapfrog;
  if (name == "reference") return IntegratorKind::Reference;
  throw std::invalid_argument("unknown integrator '" + name + "'");
}

std::string fnv1a_digest(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

int max_workers() {
  if (const char* env = std::getenv("RHMC_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) return static_cast<int>(cap);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void run_parallel(std::vector<std::function<void()>> tasks) {
  const int workers = std::min<int>(max_workers(), static_cast<int>(tasks.size()));
  if (workers <= 1) {
    for (auto& task : tasks) task();
    return;
  }
  std::mutex gate;
  size_t next = 0;
  auto worker = [&]() {
    for (;;) {
      size_t mine;
      {
        std::lock_guard<std::mutex> lock(gate);
        if (next >= tasks.size()) return;
        mine = next++;
      }
      tasks[mine]();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

int write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return kExitIo;
  out << body;
  out.flush();
  return out ? kExitOk : kExitIo;
}

}  // namespace

int cmd_sample(const RunManifest& manifest) {
  const Polytope P = build_polytope(manifest);
  const TargetDensity target = build_target(manifest, P.dim());
  if (!(manifest.h > 0.0)) throw std::invalid_argument("--h must be > 0");
  if (manifest.output_path.empty()) throw std::invalid_argument("--out is required");

  ChainConfig cfg;
  cfg.integrator.kind = parse_kind(manifest.integrator);
  cfg.integrator.step_size = manifest.h;
  cfg.integrator.fp_tolerance = manifest.fp_tolerance;
  cfg.integrator.fp_max_iters = manifest.fp_max_iters;
  cfg.integrator.reference_substeps = manifest.reference_substeps;
  cfg.steps = manifest.steps;
  cfg.burn_in = manifest.burn_in;
  cfg.thin = manifest.thin;
  cfg.seed = manifest.seed;
  cfg.lazy = manifest.lazy;
  cfg.use_filter = !manifest.no_filter;

  const Vector x0 = P.analytic_center();
  auto [samples, stats] = run_chain(P, target, x0, cfg);

  std::vector<double> ess_values;
  if (samples.rows() >= 100) {
    const EssResult e = ess(samples);
    ess_values = e.ess;
  }
  if (int rc = write_file(manifest.output_path, samples_to_csv(samples)); rc != kExitOk) {
    return rc;
  }
  if (!manifest.stats_path.empty()) {
    if (int rc = write_file(manifest.stats_path, stats_to_json(stats, ess_values));
        rc != kExitOk) {
      return rc;
    }
  }

  const long proposals = stats.total_proposals();
  const double acc_rate =
      proposals > 0 ? static_cast<double>(stats.accepted) / proposals : 0.0;
  std::cout << "acceptance_rate " << acc_rate << "\n";
  std::cout << "ess";
  if (ess_values.empty()) {
    std::cout << " n/a";
  } else {
    for (double e : ess_values) std::cout << ' ' << e;
  }
  std::cout << std::endl;
  return kExitOk;
}

namespace {

struct CheckOutcome {
  std::string name;
  std::string fixture;
  json values;
  double threshold = 0.0;
  bool pass = false;
};

// Shared fixture handles for the battery below.
IntegratorConfig check_cfg(IntegratorKind kind, double h, double tol = 1e-12) {
  IntegratorConfig cfg;
  cfg.kind = kind;
  cfg.step_size = h;
  cfg.fp_tolerance = tol;
  cfg.fp_max_iters = 100;
  cfg.reference_substeps = 128;
  return cfg;
}

CheckOutcome check_reversibility(IntegratorKind kind, const std::string& name) {
  CheckOutcome out{name, "hypercube(5,-1,1)+simplex(5) h=0.02 fp=1e-12 n=20", {}, 1e-10, false};
  double worst = 0.0;
  Rng rng(2024);
  for (const Polytope& P : {Polytope::hypercube(5, -1.0, 1.0), Polytope::simplex(5)}) {
    const TargetDensity target{Vector::LinSpaced(5, -0.5, 1.0)};
    for (int i = 0; i < 20; ++i) {
      const Vector x = random_interior_point(P, rng);
      const MetricState M = MetricState::at(P, x);
      const Vector v = sample_velocity(M, rng);
      const auto [rx, rv] =
          reversibility_residual(P, target, {x, v}, check_cfg(kind, 0.02));
      worst = std::max({worst, rx, rv});
    }
  }
  out.values = {{"max_residual", worst}};
  out.pass = worst <= out.threshold;
  return out;
}

CheckOutcome check_order(IntegratorKind kind, const std::string& name) {
  CheckOutcome out{name, "hypercube(5,-1,1) h={0.05,0.025,0.0125} n=5", {}, 1.9, false};
  const Polytope P = Polytope::hypercube(5, -1.0, 1.0);
  const TargetDensity target{Vector::Constant(5, 0.3)};
  Rng rng(77);
  double min_slope = 1e300;
  for (int i = 0; i < 5; ++i) {
    const Vector x = random_interior_point(P, rng, 0.5);
    const Vector v = sample_velocity(MetricState::at(P, x), rng);
    const OrderFit fit =
        order_fit(P, target, {x, v}, {0.05, 0.025, 0.0125}, check_cfg(kind, 0.05));
    min_slope = std::min(min_slope, fit.slope_x);
  }
  out.values = {{"min_slope_x", min_slope}};
  out.pass = min_slope >= out.threshold;
  return out;
}

CheckOutcome check_measure_preservation() {
  CheckOutcome out{
      "measure_preservation", "hypercube(2,-1,1)+random(3,6,11) h=0.01 eps=1e-6", {}, 1e-3, false};
  double worst = 0.0;
  Rng rng(5);
  for (const Polytope& P : {Polytope::hypercube(2, -1.0, 1.0), Polytope::random(3, 6, 11)}) {
    const TargetDensity target = TargetDensity::uniform(P.dim());
    const Vector x = random_interior_point(P, rng, 0.4);
    const Vector v = sample_velocity(MetricState::at(P, x), rng);
    for (IntegratorKind kind :
         {IntegratorKind::ImplicitMidpoint, IntegratorKind::GeneralizedLeapfrog}) {
      const double det =
          phase_map_jacobian_det(P, target, {x, v}, check_cfg(kind, 0.01), 1e-6);
      worst = std::max(worst, std::abs(det - 1.0));
    }
  }
  out.values = {{"max_abs_det_minus_1", worst}};
  out.pass = worst <= out.threshold;
  return out;
}

CheckOutcome check_sensitivity() {
  CheckOutcome out{"sensitivity", "hypercube(2,-1,1) h={0.01,0.001}", {}, 0.9, false};
  const Polytope P = Polytope::hypercube(2, -1.0, 1.0);
  const TargetDensity target = TargetDensity::uniform(2);
  Rng rng(13);
  const Vector x = Vector::Zero(2);
  const Vector v = sample_velocity(MetricState::at(P, x), rng);
  double min_ratio = 1e300;
  for (IntegratorKind kind :
       {IntegratorKind::ImplicitMidpoint, IntegratorKind::GeneralizedLeapfrog}) {
    for (double h : {0.01, 0.001}) {
      const MetricState M = MetricState::at(P, x);
      const double eps = 1e-6 * (1.0 + M.velocity_norm(v));
      const SensitivityReport r =
          jacobian_sensitivity(P, target, {x, v}, check_cfg(kind, h), eps);
      min_ratio = std::min(min_ratio, r.ratio);
    }
  }
  out.values = {{"min_ratio", min_ratio}};
  out.pass = min_ratio >= out.threshold;
  return out;
}

CheckOutcome check_self_concordance() {
  CheckOutcome out{"self_concordance", "1000 random (polytope,x,y,v) draws", {}, 0.0, false};
  const ScBatteryResult r = sc_battery(99, 1000);
  out.values = {{"violations", r.violations}, {"worst_slack", r.worst_slack}};
  out.pass = r.violations == 0;
  return out;
}

struct ChainOutput {
  Matrix samples;
  ChainStats stats;
};

ChainOutput run_check_chain(const Vector& alpha_vals) {
  const Polytope P = Polytope::hypercube(3, 0.0, 1.0);
  const TargetDensity target{alpha_vals};
  ChainConfig cfg;
  cfg.integrator = check_cfg(IntegratorKind::ImplicitMidpoint, 0.2, 1e-10);
  cfg.steps = 30000;
  cfg.burn_in = 3000;
  cfg.seed = 314;
  auto [samples, stats] = run_chain(P, target, P.analytic_center(), cfg);
  return {std::move(samples), std::move(stats)};
}

CheckOutcome check_good_region() {
  CheckOutcome out{"good_region", "hypercube(3,0,1) alpha=(1,2,3) rho=0.01", {}, 0.99, false};
  const Polytope P = Polytope::hypercube(3, 0.0, 1.0);
  Vector alpha(3);
  alpha << 1.0, 2.0, 3.0;
  const ChainOutput chain = run_check_chain(alpha);
  long inside = 0;
  for (Index i = 0; i < chain.samples.rows(); ++i) {
    const MetricState M = MetricState::at(P, chain.samples.row(i).transpose());
    if (good_region_check(M, alpha, 3, 0.01).second) ++inside;
  }
  const double fraction = static_cast<double>(inside) / chain.samples.rows();
  out.values = {{"fraction_inside", fraction}};
  out.pass = fraction >= out.threshold;
  return out;
}

CheckOutcome check_moments_exponential() {
  CheckOutcome out{
      "moments_exponential", "hypercube(3,0,1) alpha=(1,2,3) imm h=0.2", {}, 3.5, false};
  Vector alpha(3);
  alpha << 1.0, 2.0, 3.0;
  const ChainOutput chain = run_check_chain(alpha);
  const MomentReport report = moment_test_box(chain.samples, alpha, 0.0, 1.0);
  double worst_z = 0.0;
  for (double z : report.mean_z) worst_z = std::max(worst_z, std::abs(z));
  out.values = {{"max_abs_mean_z", worst_z}};
  out.pass = worst_z <= out.threshold;
  return out;
}

CheckOutcome check_moments_uniform() {
  CheckOutcome out{"moments_uniform", "hypercube(3,0,1) alpha=0 imm h=0.2", {}, 0.05, false};
  const ChainOutput chain = run_check_chain(Vector::Zero(3));
  const MomentReport report = moment_test_box(chain.samples, Vector::Zero(3), 0.0, 1.0);
  double worst_var = 0.0, worst_z = 0.0;
  for (double r : report.variance_rel_err) worst_var = std::max(worst_var, r);
  for (double z : report.mean_z) worst_z = std::max(worst_z, std::abs(z));
  out.values = {{"max_variance_rel_err", worst_var}, {"max_abs_mean_z", worst_z}};
  out.pass = worst_var <= out.threshold && worst_z <= 3.5;
  return out;
}

CheckOutcome check_oracle_integrity() {
  CheckOutcome out{
      "oracle_integrity", "hypercube(5,-1,1)+simplex(5)+random(4,9,21) h=0.05", {}, 1e-8, false};
  Rng rng(8);
  double worst = 0.0;
  bool richardson_ok = true;
  for (const Polytope& P :
       {Polytope::hypercube(5, -1.0, 1.0), Polytope::simplex(5), Polytope::random(4, 9, 21)}) {
    const TargetDensity target{Vector::Constant(P.dim(), 0.2)};
    const Vector x = random_interior_point(P, rng, 0.5);
    const Vector v = sample_velocity(MetricState::at(P, x), rng);
    try {
      const double err =
          energy_error(P, target, {x, v}, check_cfg(IntegratorKind::Reference, 0.05));
      worst = std::max(worst, err);
    } catch (const OracleNotConverged&) {
      richardson_ok = false;
    }
  }
  out.values = {{"max_energy_error", worst}, {"richardson_ok", richardson_ok}};
  out.pass = richardson_ok && worst <= out.threshold;
  return out;
}

}  // namespace

int cmd_check(const RunManifest& manifest) {
  using Runner = std::function<CheckOutcome()>;
  std::vector<std::pair<std::string, Runner>> registry = {
      {"reversibility_imm",
       [] { return check_reversibility(IntegratorKind::ImplicitMidpoint, "reversibility_imm"); }},
      {"reversibility_leapfrog",
       [] {
         return check_reversibility(IntegratorKind::GeneralizedLeapfrog,
                                    "reversibility_leapfrog");
       }},
      {"order_imm", [] { return check_order(IntegratorKind::ImplicitMidpoint, "order_imm"); }},
      {"order_leapfrog",
       [] { return check_order(IntegratorKind::GeneralizedLeapfrog, "order_leapfrog"); }},
      {"measure_preservation", check_measure_preservation},
      {"sensitivity", check_sensitivity},
      {"self_concordance", check_self_concordance},
      {"good_region", check_good_region},
      {"moments_exponential", check_moments_exponential},
      {"moments_uniform", check_moments_uniform},
      {"oracle_integrity", check_oracle_integrity},
  };

  if (!manifest.only_check.empty()) {
    std::erase_if(registry, [&](const auto& item) { return item.first != manifest.only_check; });
    if (registry.empty()) {
      throw std::invalid_argument("unknown check '" + manifest.only_check + "'");
    }
  }
  if (!manifest.polytope_path.empty()) {
    build_polytope(manifest);  // validates the user file up front; exit 2 on failure
  }

  std::vector<CheckOutcome> outcomes(registry.size());
  std::vector<std::function<void()>> tasks;
  tasks.reserve(registry.size());
  for (size_t i = 0; i < registry.size(); ++i) {
    tasks.push_back([&, i] { outcomes[i] = registry[i].second(); });
  }
  run_parallel(std::move(tasks));

  json report = json::array();
  bool all_pass = true;
  for (const CheckOutcome& oc : outcomes) {
    report.push_back({{"check_name", oc.name},
                      {"inputs_digest", fnv1a_digest(oc.fixture)},
                      {"values", oc.values},
                      {"threshold", oc.threshold},
                      {"pass", oc.pass}});
    all_pass = all_pass && oc.pass;
    std::cout << (oc.pass ? "[pass] " : "[FAIL] ") << oc.name << ' ' << oc.values.dump()
              << std::endl;
  }
  const std::string body = report.dump(2) + "\n";
  if (!manifest.output_path.empty()) {
    if (int rc = write_file(manifest.output_path, body); rc != kExitOk) return rc;
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_bench(const RunManifest& manifest) {
  const Polytope P = build_polytope(manifest);
  const TargetDensity target = build_target(manifest, P.dim());
  if (manifest.h_grid.empty()) throw std::invalid_argument("--h-grid is required");
  for (double h : manifest.h_grid) {
    if (!(h > 0.0)) throw std::invalid_argument("--h-grid entries must be > 0");
  }
  std::vector<std::string> names = manifest.integrators;
  if (names.empty()) names = {"imm", "leapfrog"};

  Rng rng(manifest.seed);
  const Vector x = random_interior_point(P, rng, 0.5);
  const Vector v = sample_velocity(MetricState::at(P, x), rng);

  std::ostringstream csv;
  csv << "integrator,h,position_error,energy_error,fp_iters,wall_time_s,ess_per_s\n";
  for (const std::string& name : names) {
    const IntegratorKind kind = parse_kind(name);
    for (double h : manifest.h_grid) {
      IntegratorConfig cfg = check_cfg(kind, h, manifest.fp_tolerance);
      cfg.fp_max_iters = manifest.fp_max_iters;
      cfg.reference_substeps = manifest.reference_substeps;

      const auto t0 = std::chrono::steady_clock::now();
      const auto [out, info] = integrator_step(P, target, {x, v}, cfg);
      const auto t1 = std::chrono::steady_clock::now();
      const double wall = std::chrono::duration<double>(t1 - t0).count();

      IntegratorConfig ref_cfg = check_cfg(IntegratorKind::Reference, h);
      const PhaseState ref = reference_flow(P, target, {x, v}, ref_cfg);
      const MetricState start = MetricState::at(P, x);
      const MetricState end = MetricState::at(P, out.x);
      const double pos_err = start.position_norm(out.x - ref.x);
      const double energy_err = std::abs(hamiltonian(end, target, out.v) -
                                         hamiltonian(start, target, v));

      double ess_per_s = std::nan("");
      if (manifest.ess_steps > 0) {
        ChainConfig chain_cfg;
        chain_cfg.integrator = cfg;
        chain_cfg.steps = manifest.ess_steps;
        chain_cfg.seed = manifest.seed;
        const auto c0 = std::chrono::steady_clock::now();
        auto [samples, stats] = run_chain(P, target, P.analytic_center(), chain_cfg);
        const auto c1 = std::chrono::steady_clock::now();
        if (samples.rows() >= 100) {
          const EssResult e = ess(samples);
          const double min_ess = *std::min_element(e.ess.begin(), e.ess.end());
          ess_per_s = min_ess / std::chrono::duration<double>(c1 - c0).count();
        }
      }

      char line[256];
      std::snprintf(line, sizeof(line), "%s,%.17g,%.17g,%.17g,%d,%.3e,%.6g\n", name.c_str(), h,
                    pos_err, energy_err, info.fp_iters_used, wall, ess_per_s);
      csv << line;
    }
  }
  if (manifest.output_path.empty()) {
    std::cout << csv.str();
    return kExitOk;
  }
  return write_file(manifest.output_path, csv.str());
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Riemannian HMC sampling on polytopes with the log-barrier metric"};
  app.require_subcommand(1);
  RunManifest m;

  auto add_common = [&m](CLI::App* sub) {
    sub->add_option("--polytope", m.polytope_path, "polytope text file");
    sub->add_option("--builtin", m.builtin,
                    "hypercube:n:lo:hi | simplex:n | random:n:m:seed");
    sub->add_option("--alpha", m.alpha_spec, "inline '1,2,3' or '@file'; default uniform");
    sub->add_option("--seed", m.seed, "RNG seed");
    sub->add_option("--fp-tol", m.fp_tolerance, "fixed-point tolerance");
    sub->add_option("--fp-iters", m.fp_max_iters, "fixed-point iteration cap");
    sub->add_option("--ref-substeps", m.reference_substeps, "reference RK4 substeps");
  };

  CLI::App* sample = app.add_subcommand("sample", "run one chain, write samples CSV");
  add_common(sample);
  sample->add_option("--integrator", m.integrator, "imm | leapfrog | reference");
  sample->add_option("--h", m.h, "step size")->required();
  sample->add_option("--steps", m.steps, "post-burn-in steps");
  sample->add_option("--burn-in", m.burn_in, "burn-in steps");
  sample->add_option("--thin", m.thin, "record every thin-th step");
  sample->add_flag("--lazy", m.lazy, "hold with probability 1/2 each step");
  sample->add_flag("--no-filter", m.no_filter, "disable the filter (reference only)");
  sample->add_option("--out", m.output_path, "samples CSV path")->required();
  sample->add_option("--stats", m.stats_path, "stats JSON sidecar path");

  CLI::App* check = app.add_subcommand("check", "run the diagnostics battery");
  add_common(check);
  check->add_option("--only", m.only_check, "run a single named check");
  check->add_option("--out", m.output_path, "JSON report path");

  CLI::App* bench = app.add_subcommand("bench", "order/cost sweep over an h grid");
  add_common(bench);
  bench->add_option("--h-grid", m.h_grid, "comma-separated step sizes")
      ->required()
      ->delimiter(',');
  bench->add_option("--integrators", m.integrators, "subset of imm,leapfrog,reference")
      ->delimiter(',');
  bench->add_option("--ess-steps", m.ess_steps, "chain length for ESS-per-second (0 = off)");
  bench->add_option("--out", m.output_path, "CSV path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (sample->parsed()) {
      m.command = "sample";
      return cmd_sample(m);
    }
    if (check->parsed()) {
      m.command = "check";
      return cmd_check(m);
    }
    m.command = "bench";
    return cmd_bench(m);
  } catch (const NotInterior&) {
    std::cerr << "error: point not strictly interior\n";
    return kExitNotInterior;
  } catch (const NoInteriorPoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotInterior;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace rhmc
