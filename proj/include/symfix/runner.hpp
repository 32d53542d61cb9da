#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "symfix/serialize.hpp"

namespace symfix::cli {

/// Settings for one tool invocation. The optional fields override the
/// node-search settings carried by the instance (bundled or loaded); unset
/// fields keep the instance's values, so a fixed (config, instance, seed)
/// triple always produces a byte-identical report.
struct RunConfig {
  std::string subcommand = "all";  // classify | hilbert | fano | epw | all
  std::string instance_path;      // empty: the bundled reference instance
  std::optional<std::uint64_t> seed;
  std::optional<double> residual_tol;
  std::optional<double> dedupe_tol;
  std::optional<int> starts;
  std::optional<int> threads;
  std::string output_path;  // empty: no report file
  int verbosity = 1;        // 0: verdict lines, 1: + certificate lines, 2: + details
  int hilbert_points = 8;   // fixed points of the surface involution
  int surface_trace = 4;    // its trace on the surface's 20-dim (1,1)-lattice
};

struct RunResult {
  int exit_code = 0;  // 0 iff every certificate passed
  Json report;
  std::string summary;  // human-readable; the CLI prints this to stdout
};

/// Execute the requested verification(s). Never throws for instance or
/// certificate failures — those become failed certificates in the report
/// and a nonzero exit code naming the first failure.
RunResult run(const RunConfig& cfg);

}  // namespace symfix::cli
