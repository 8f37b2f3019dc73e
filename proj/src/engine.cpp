#include "hkbsim/engine.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hkb {

namespace {

constexpr double kTickEps = 1e-9;

// Portable uniform double in [0, 1): top 53 bits of the engine output.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CouplingMatrix coupling_from(const AgentParams& p) {
    return CouplingMatrix::standard(p.a_contralateral, p.a_motor, p.k_ratio);
}

} // namespace

std::vector<double> initial_headings(int n_agents, double spacing_rad, double theta_base) {
    std::vector<double> headings(static_cast<std::size_t>(n_agents));
    for (int i = 0; i < n_agents; ++i)
        headings[static_cast<std::size_t>(i)] =
            theta_base + spacing_rad * (i - (n_agents - 1) / 2.0);
    return headings;
}

std::vector<PhaseVector> initial_phases(PhaseInitMode mode, std::uint64_t seed, int n_agents) {
    std::vector<PhaseVector> phases(static_cast<std::size_t>(n_agents));
    if (mode == PhaseInitMode::InPhase) {
        for (auto& p : phases) p.fill(0.0);
        return phases;
    }
    if (mode == PhaseInitMode::MotorAntiphase) {
        for (auto& p : phases) p = {0.0, 0.0, 0.0, std::numbers::pi};
        return phases;
    }
    std::mt19937_64 rng(seed);
    for (auto& p : phases)
        for (auto& v : p) v = two_pi * uniform01(rng);
    return phases;
}

double default_heading_base(const RunConfig& config) {
    Vec2 mid{0.0, 0.0};
    for (const auto& s : config.environment.sources) {
        mid.x += s.position.x;
        mid.y += s.position.y;
    }
    const double n = static_cast<double>(config.environment.sources.size());
    mid.x /= n;
    mid.y /= n;
    const double dx = mid.x - config.start_position.x;
    const double dy = mid.y - config.start_position.y;
    if (dx == 0.0 && dy == 0.0) return std::numbers::pi / 2.0;
    return std::atan2(dy, dx);
}

void validate(const RunConfig& config) {
    if (config.dt_s <= 0.0) throw std::invalid_argument("dt_s must be positive");
    if (config.duration_s <= 0.0) throw std::invalid_argument("duration_s must be positive");
    if (config.agent_count < 1) throw std::invalid_argument("agent count must be at least 1");
    if (config.record_stride < 1) throw std::invalid_argument("record_stride must be at least 1");
    if (config.environment.sources.empty() || config.environment.sources.size() > 2)
        throw std::invalid_argument("environment needs 1 or 2 stimulus sources");
    for (const auto& s : config.environment.sources)
        if (s.quality < 0.0 || s.quality > 1.0)
            throw std::invalid_argument("source quality must lie in [0, 1]");
    if (config.environment.lambda_env <= 0.0)
        throw std::invalid_argument("lambda_env must be positive");
    if (config.environment.lambda_social <= 0.0)
        throw std::invalid_argument("lambda_social must be positive");
    if (config.environment.social_strength < 0.0)
        throw std::invalid_argument("social_strength must be non-negative");
    if (config.freeze_radius_cm < 0.0)
        throw std::invalid_argument("freeze_radius_cm must be non-negative");

    const double ticks = config.duration_s / config.dt_s;
    if (std::abs(ticks - std::round(ticks)) > kTickEps)
        throw std::invalid_argument("duration_s must be an integer number of timesteps");
    const auto n_ticks = static_cast<long long>(std::llround(ticks));
    if (n_ticks % config.record_stride != 0)
        throw std::invalid_argument("record_stride must divide the tick count");
}

SimulationRecord run(const RunConfig& config) {
    validate(config);

    const auto n_agents = static_cast<std::size_t>(config.agent_count);
    const auto n_ticks =
        static_cast<std::size_t>(std::llround(config.duration_s / config.dt_s));
    const auto stride = static_cast<std::size_t>(config.record_stride);

    const double theta_base =
        config.heading_base_rad ? *config.heading_base_rad : default_heading_base(config);
    const std::vector<double> headings =
        initial_headings(config.agent_count, config.heading_spacing_rad, theta_base);
    const std::vector<PhaseVector> phases =
        initial_phases(config.init_phase_mode, config.seed, config.agent_count);

    std::vector<AgentState> agents(n_agents);
    for (std::size_t i = 0; i < n_agents; ++i) {
        AgentState& a = agents[i];
        a.position = config.start_position;
        a.heading = headings[i];
        a.network = OscillatorNetwork::standard(config.agent.sensitivity,
                                                coupling_from(config.agent),
                                                config.agent.frequency_hz);
        a.network.anti_phase_prefactor = config.agent.anti_phase_prefactor;
        a.network.phases = phases[i];
        a.body_radius = config.agent.body_radius;
        a.speed = config.agent.speed;
        a.heading_gain = config.agent.heading_gain;
    }

    SimulationRecord record;
    record.config = config;
    record.dt_record = config.dt_s * static_cast<double>(stride);
    record.frames.reserve(n_ticks / stride + 1);

    std::vector<Vec2> positions(n_agents);
    auto snapshot = [&](double t) {
        for (std::size_t i = 0; i < n_agents; ++i) positions[i] = agents[i].position;
        Frame frame;
        frame.t = t;
        frame.agents.resize(n_agents);
        for (std::size_t i = 0; i < n_agents; ++i) {
            const AgentState& a = agents[i];
            const SensorPair sensors = sensor_positions(a.position, a.heading, a.body_radius);
            AgentSample& s = frame.agents[i];
            s.position = a.position;
            s.heading = a.heading;
            s.phases = a.network.phases;
            s.input_left = perceived_stimulus(config.environment, positions, i, sensors.left);
            s.input_right = perceived_stimulus(config.environment, positions, i, sensors.right);
            s.frozen = a.frozen;
        }
        record.frames.push_back(std::move(frame));
    };

    snapshot(0.0);

    std::vector<AgentState> next(n_agents);
    for (std::size_t tick = 1; tick <= n_ticks; ++tick) {
        for (std::size_t i = 0; i < n_agents; ++i) positions[i] = agents[i].position;
        for (std::size_t i = 0; i < n_agents; ++i)
            next[i] = step_agent(agents[i], config.environment, positions, i, config.dt_s).state;
        agents.swap(next);

        if (config.freeze_radius_cm > 0.0) {
            for (auto& a : agents) {
                if (a.frozen) continue;
                for (const auto& src : config.environment.sources) {
                    if (distance(a.position, src.position) < config.freeze_radius_cm) {
                        a.frozen = true;
                        break;
                    }
                }
            }
        }

        if (tick % stride == 0) snapshot(static_cast<double>(tick) * config.dt_s);
    }
    return record;
}

} // namespace hkb
