#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "hkbsim/environment.hpp"
#include "hkbsim/geometry.hpp"
#include "hkbsim/oscillator.hpp"

namespace hkb {

/// One embodied agent: a circular body moving at constant speed, steered by
/// the phase angle between its two motor oscillators.
struct AgentState {
    Vec2 position;                 // cm
    double heading{0.0};           // rad, kept unwrapped
    OscillatorNetwork network;
    bool frozen{false};
    double body_radius{2.5};       // cm
    double speed{10.0};            // cm/s
    double heading_gain{1.0};      // eta, 1/s
};

struct SensorPair {
    Vec2 left;
    Vec2 right;
};

/// Sensors sit on the body circle at +/- 45 degrees from the heading
/// (90 degrees apart, both at the front).
SensorPair sensor_positions(Vec2 pos, double heading, double body_radius);

/// Turn rate from the motor phase angle: eta * (phi_v3 - phi_v4),
/// with the difference reduced to (-pi, pi].
inline double heading_derivative(double motor_phase_angle, double eta) {
    return eta * motor_phase_angle;
}

struct StepResult {
    AgentState state;
    double input_left{0.0};
    double input_right{0.0};
};

/// Advance one agent by dt: sample both sensors once (held constant within
/// the step), integrate (phi1..phi4, theta) jointly with RK4, wrap phases,
/// then move the body along the new heading unless frozen.
StepResult step_agent(const AgentState& agent, const EnvironmentSpec& env,
                      std::span<const Vec2> all_positions, std::size_t self_index, double dt);

} // namespace hkb
