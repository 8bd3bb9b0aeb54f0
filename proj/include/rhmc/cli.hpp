#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rhmc/types.hpp"

namespace rhmc {

/// Everything one invocation needs; filled by flag parsing or by tests.
struct RunManifest {
  std::string command;          // sample | check | bench
  std::string polytope_path;    // file, mutually exclusive with builtin
  std::string builtin;          // hypercube:n:lo:hi | simplex:n | random:n:m:seed
  std::string alpha_spec;       // "1,2,3" inline or "@path"; empty = uniform
  std::string integrator = "imm";  // imm | leapfrog | reference
  std::vector<std::string> integrators;  // bench only; empty = imm,leapfrog
  double h = 0.0;
  std::vector<double> h_grid;   // bench
  long steps = 10000;
  long burn_in = 0;
  long thin = 1;
  std::uint64_t seed = 0;
  bool lazy = false;
  bool no_filter = false;
  double fp_tolerance = 1e-10;
  int fp_max_iters = 50;
  int reference_substeps = 64;
  std::string output_path;
  std::string stats_path;       // optional stats sidecar for sample
  std::string only_check;       // check: run just the named check
  long ess_steps = 0;           // bench: >0 adds an ESS-per-second sweep
};

/// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNotInterior = 3;
inline constexpr int kExitIo = 4;

int cmd_sample(const RunManifest& manifest);
int cmd_check(const RunManifest& manifest);
int cmd_bench(const RunManifest& manifest);

/// Parse argv-style arguments (without the program name) and dispatch.
int run_cli(const std::vector<std::string>& args);

}  // namespace rhmc
