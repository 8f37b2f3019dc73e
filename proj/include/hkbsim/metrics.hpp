#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hkbsim/engine.hpp"

namespace hkb {

enum class CouplingMeasure { Plv, Wpli };

struct KopStats {
    double mean{0.0};
    double sd{0.0};  // population convention (1/N)
};

struct WindowedStat {
    std::vector<double> per_window;
    double mean{0.0};
};

/// One-run summary. For single-agent runs inter_wpli is 0 and the movement
/// alignment of the lone heading is reported as (1, 0).
struct MetricSummary {
    double performance{0.0};
    double mean_kop{0.0};
    double sd_kop{0.0};
    double mean_plv{0.0};
    double plv_full{0.0};       // single window spanning the whole series
    double intra_wpli{0.0};
    double inter_wpli{0.0};
    double movement_mean_kop{0.0};
    double movement_sd_kop{0.0};
};

/// Kuramoto order parameter of one set of phases: |mean of exp(i*phi)|.
double kop(std::span<const double> phases);

/// KOP per time index over equally long component series; returns the time
/// mean and the population standard deviation (metastability).
KopStats kop_series_stats(const std::vector<std::vector<double>>& components);

/// Sliding phase-locking value of a phase-difference series.
WindowedStat plv(std::span<const double> diff, std::size_t window, std::size_t stride);

/// Sliding weighted phase-lag index; a window whose samples all have zero
/// imaginary part scores 0.
WindowedStat wpli(std::span<const double> diff, std::size_t window, std::size_t stride);

/// Mean of the chosen measure over the agent's coupled pairs
/// (v1-v4, v2-v3, v3-v4), with metrics starting at `from_frame`.
double intra_agent_coupling(const SimulationRecord& record, std::size_t agent_index,
                            CouplingMeasure measure, std::size_t window, std::size_t stride,
                            std::size_t from_frame = 0);

/// Mean wPLI over all agent pairs and all four node indices of the
/// across-agent phase differences.
double inter_agent_coupling(const SimulationRecord& record, std::size_t window,
                            std::size_t stride, std::size_t from_frame = 0);

/// KOP statistics over the agents' heading angles.
KopStats movement_alignment(const SimulationRecord& record, std::size_t from_frame = 0);

/// 1 - D(t_end)/D(t_0) for a single agent and a single source.
double performance_gradient(const SimulationRecord& record);

/// 1 - min(D_source1, D_source2)(t_end)/D(t_0) for a single agent.
double performance_binary(const SimulationRecord& record);

/// Group score of the better source: max over sources of the mean over agents
/// of 1 - D_source(t_end)/D(t_0) (i.e. the source with the smallest average
/// final distance). With clamp_negative, per-agent terms are floored at 0.
double performance_collective(const SimulationRecord& record, bool clamp_negative = false);

/// Full summary with the performance formula picked from the record's shape
/// (agent count and source count).
MetricSummary summarize(const SimulationRecord& record, const MetricParams& params);

} // namespace hkb
