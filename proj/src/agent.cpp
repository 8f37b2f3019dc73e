#include "hkbsim/agent.hpp"

#include <cmath>
#include <numbers>

namespace hkb {

SensorPair sensor_positions(Vec2 pos, double heading, double body_radius) {
    // Offsets are built by rotating the body-frame sensor points so that the
    // left/right components stay exact mirrors of each other.
    const double c = std::cos(heading);
    const double s = std::sin(heading);
    const double u = body_radius * std::numbers::sqrt2 / 2.0;  // forward component
    const double w = u;                                        // lateral component
    SensorPair sp;
    sp.left = {pos.x + c * u - s * w, pos.y + s * u + c * w};
    sp.right = {pos.x + c * u + s * w, pos.y + s * u - c * w};
    return sp;
}

StepResult step_agent(const AgentState& agent, const EnvironmentSpec& env,
                      std::span<const Vec2> all_positions, std::size_t self_index, double dt) {
    const SensorPair sensors = sensor_positions(agent.position, agent.heading, agent.body_radius);
    const double input_left = perceived_stimulus(env, all_positions, self_index, sensors.left);
    const double input_right = perceived_stimulus(env, all_positions, self_index, sensors.right);

    std::array<double, 5> state{agent.network.phases[0], agent.network.phases[1],
                                agent.network.phases[2], agent.network.phases[3],
                                agent.heading};

    const OscillatorNetwork& net = agent.network;
    const double eta = agent.heading_gain;
    auto derivative = [&](const std::array<double, 5>& y) {
        OscillatorNetwork n = net;
        n.phases = {y[0], y[1], y[2], y[3]};
        const PhaseVector dphi = hkb_derivatives(n, input_left, input_right);
        return std::array<double, 5>{dphi[0], dphi[1], dphi[2], dphi[3],
                                     heading_derivative(phase_difference(y[2], y[3]), eta)};
    };

    const std::array<double, 5> next = rk4_step(state, dt, derivative);

    StepResult result;
    result.state = agent;
    for (std::size_t i = 0; i < kNodes; ++i)
        result.state.network.phases[i] = wrap_phase(next[i]);
    result.state.heading = next[4];
    if (!agent.frozen) {
        result.state.position.x += agent.speed * dt * std::cos(result.state.heading);
        result.state.position.y += agent.speed * dt * std::sin(result.state.heading);
    }
    result.input_left = input_left;
    result.input_right = input_right;
    return result;
}

} // namespace hkb
