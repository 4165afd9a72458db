#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nehari/grid.hpp"
#include "nehari/params.hpp"
#include "nehari/solver.hpp"

namespace nehari {

struct SweepConfig {
  int points = 16;
  std::string spacing = "default";  // default | linear
  double lo_frac = 0.05;            // linear spacing only, fractions of lambda*
  double hi_frac = 0.95;
};

struct RunConfig {
  ProblemParams params;
  GridSpec grid;
  SolveOptions solver;
  SweepConfig sweep;
  std::string output_dir = ".";
  std::uint64_t seed = 20240101;
};

/// INI file with sections [problem], [grid], [solver], [sweep], [output], [run].
/// Unknown keys are a ConfigError so typos do not pass silently.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

/// Checks the non-parameter invariants (positive tolerances, sizes).
void check_config(const RunConfig& cfg);

}  // namespace nehari
