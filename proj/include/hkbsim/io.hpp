#pragma once

#include <string>
#include <vector>

#include "hkbsim/engine.hpp"
#include "hkbsim/sweeps.hpp"

namespace hkb {

/// CSV trajectory: comment lines carry the schema version and the config
/// echo, then one row per (tick, agent), tick-major. Numbers are written
/// with 17 significant digits so they parse back bit-exactly.
std::string trajectory_to_csv(const SimulationRecord& record);

/// Inverse of trajectory_to_csv; throws std::invalid_argument on malformed
/// input.
SimulationRecord trajectory_from_csv(const std::string& text);

/// CSV metrics table: one row per sweep row (or a single row for one run),
/// prefixed by the grid coordinate columns.
std::string metrics_to_csv(const std::vector<std::string>& coord_names,
                           const std::vector<SweepRow>& rows);

/// Metrics table for one finished run.
std::string metrics_to_csv(const SimulationRecord& record, const MetricSummary& summary);

/// Write `content` to `path`, reporting the path on failure.
void write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace hkb
