#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkbsim/agent.hpp"
#include "hkbsim/environment.hpp"
#include "hkbsim/geometry.hpp"
#include "hkbsim/oscillator.hpp"

namespace hkb {

/// InPhase: all four phases 0. Random: seeded uniform draws. MotorAntiphase:
/// the fixed pattern (0, 0, 0, pi) shared by every agent, which starts the
/// motor pair on the anti-phase branch so deterministic group runs steer
/// instead of holding their initial heading.
enum class PhaseInitMode { InPhase, Random, MotorAntiphase };

/// Parameters shared by every agent in a run.
struct AgentParams {
    double sensitivity{5.0};          // c
    double a_contralateral{1.0};      // v1-v4 and v2-v3 in-phase strength
    double a_motor{1.0};              // v3-v4 in-phase strength
    double k_ratio{2.0};              // b = k_ratio * a
    double anti_phase_prefactor{2.0};
    double frequency_hz{5.0};
    double speed{10.0};               // cm/s
    double body_radius{2.5};          // cm
    double heading_gain{1.0};         // eta, 1/s
};

/// Windowing and slicing choices for the summary metrics.
struct MetricParams {
    std::size_t window{100};          // samples of the recorded series
    std::size_t stride{10};           // samples between window starts
    double transient_s{0.0};          // dropped before coordination metrics
    bool clamp_collective{false};     // clamp per-agent terms at 0
};

struct RunConfig {
    EnvironmentSpec environment;
    AgentParams agent;
    int agent_count{1};
    Vec2 start_position{0.0, -100.0};
    double heading_spacing_rad{0.0};
    std::optional<double> heading_base_rad;  // default: toward the source midpoint
    double duration_s{30.0};
    double dt_s{0.01};
    std::uint64_t seed{0};
    PhaseInitMode init_phase_mode{PhaseInitMode::InPhase};
    double freeze_radius_cm{0.0};            // 0 disables the freeze rule
    int record_stride{1};
    MetricParams metrics;
};

struct AgentSample {
    Vec2 position;
    double heading;
    PhaseVector phases;
    double input_left;
    double input_right;
    bool frozen;
};

struct Frame {
    double t;
    std::vector<AgentSample> agents;
};

struct SimulationRecord {
    RunConfig config;
    double dt_record;                 // dt_s * record_stride
    std::vector<Frame> frames;        // duration/(dt*stride) + 1 entries
};

/// Headings theta_base + spacing * (i - (n-1)/2), ordered by agent index.
std::vector<double> initial_headings(int n_agents, double spacing_rad, double theta_base);

/// Per-agent initial phases. Random mode draws uniform [0, 2*pi) from a
/// seeded splitmix/mt19937_64 stream, agent-major then node-minor, so runs
/// reproduce across platforms.
std::vector<PhaseVector> initial_phases(PhaseInitMode mode, std::uint64_t seed, int n_agents);

/// Direction from the start position toward the midpoint of the sources.
double default_heading_base(const RunConfig& config);

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const RunConfig& config);

/// Execute a full run: synchronous per-tick updates (all agents sense the
/// previous tick's positions), the freeze rule after each tick, and frames
/// recorded every `record_stride` ticks. Deterministic for a given config.
SimulationRecord run(const RunConfig& config);

} // namespace hkb
