#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nehari/grid.hpp"
#include "nehari/params.hpp"

namespace nehari {

/// Extra fields written for solver output.
struct SolveInfo {
  double lambda = 0.0;
  std::string branch;
  double energy = 0.0;
  double residual = 0.0;
  int iterations = 0;

  bool operator==(const SolveInfo&) const = default;
};

/// JSON document {params, grid, values, checksum[, solve fields]}. Doubles are
/// written in shortest round-trip form, so write/read is bit-exact.
struct Snapshot {
  ProblemParams params;
  GridSpec grid;
  std::vector<double> values;
  std::optional<SolveInfo> solve;
};

/// FNV-1a (64-bit) over the IEEE-754 bit patterns of the values.
std::uint64_t values_checksum(std::span<const double> values);

std::string to_json(const Snapshot& snap);
/// Throws SnapshotFormat on malformed input or checksum mismatch.
Snapshot snapshot_from_json(const std::string& text);

void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

}  // namespace nehari
