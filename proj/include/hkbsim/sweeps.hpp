#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hkbsim/engine.hpp"
#include "hkbsim/metrics.hpp"

namespace hkb {

enum class SweepFamily { SingleGradient, SingleBinary, Ternary, EnvGrid };

struct SweepSpec {
    SweepFamily family{SweepFamily::SingleGradient};
    RunConfig base;                 // geometry/agent defaults; families override
    int runs_per_point{1};          // 50 for the gradient family
    std::uint64_t seed_base{0};
    int resolution{50};             // ternary lattice resolution
    bool raw_steps{false};          // ternary: enumerate the raw parameter steps
};

/// One grid point: named coordinates plus the run to execute.
struct SweepPoint {
    std::vector<std::pair<std::string, double>> coords;
    RunConfig config;
};

struct SweepRow {
    std::size_t point_index{0};
    int repetition{0};
    std::vector<std::pair<std::string, double>> coords;
    std::uint64_t seed{0};
    MetricSummary summary;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<std::string> coord_names;
    std::vector<SweepRow> rows;     // ordered by (point index, repetition)
};

/// Deterministic per-run seed derived from (base, point, repetition).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point, std::uint64_t repetition);

/// Single-agent gradient ascent: c in {0, 5} x a in {0.05..2.50 step 0.05},
/// random initial phases, repeated runs per point.
std::vector<SweepPoint> grid_single_gradient(const SweepSpec& spec);

/// Single-agent decision task: c in {0..10 step 1} x a in {0.05..2.5 step
/// 0.05} x motor-coupling on/off, quality ratio 0.95, in-phase start.
std::vector<SweepPoint> grid_single_binary(const SweepSpec& spec);

/// Lattice points (i, j, k), i+j+k = 2*resolution, each in [0, resolution],
/// mapped to c in [0,10], S in [0,5], motor coupling a in [0,1].
std::vector<std::array<int, 3>> ternary_lattice(int resolution);

/// Group runs over the ternary lattice (or the raw parameter steps).
std::vector<SweepPoint> grid_ternary(const SweepSpec& spec);

/// Group runs over quality ratio r in {0..1 step 0.02} x heading spacing
/// {0..18 deg step 0.36 deg} at c=3, S=1, a=0.5.
std::vector<SweepPoint> grid_env(const SweepSpec& spec);

std::vector<SweepPoint> build_grid(const SweepSpec& spec);

/// Execute every (point, repetition) run on `workers` threads. Row order and
/// contents are independent of the worker count.
SweepResult run_sweep(const SweepSpec& spec, int workers);

std::string family_name(SweepFamily family);
SweepFamily family_from_name(const std::string& name);

} // namespace hkb
