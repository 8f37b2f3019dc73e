#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hkbsim/agent.hpp"

using namespace hkb;

namespace {

constexpr double pi = std::numbers::pi;

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

AgentState make_agent(double c, double a, const std::array<double, 4>& phases,
                      Vec2 pos = {0.0, -100.0}, double heading = pi / 2) {
    AgentState agent;
    agent.position = pos;
    agent.heading = heading;
    agent.network = OscillatorNetwork::standard(c, CouplingMatrix::standard(a, a));
    agent.network.phases = phases;
    return agent;
}

EnvironmentSpec single_source_env() {
    EnvironmentSpec env;
    env.sources = {{{-100.0, 0.0}, 1.0}};
    return env;
}

} // namespace

TEST_CASE("sensors sit 90 degrees apart at the front") {
    const double d = 2.5 * std::numbers::sqrt2 / 2.0;

    SensorPair sp = sensor_positions({0.0, 0.0}, 0.0, 2.5);
    CHECK(sp.left.x == doctest::Approx(d).epsilon(1e-12));
    CHECK(sp.left.y == doctest::Approx(d).epsilon(1e-12));
    CHECK(sp.right.x == doctest::Approx(d).epsilon(1e-12));
    CHECK(sp.right.y == doctest::Approx(-d).epsilon(1e-12));

    sp = sensor_positions({0.0, 0.0}, pi / 2, 2.5);
    CHECK(sp.left.x == doctest::Approx(-d).epsilon(1e-12));
    CHECK(sp.left.y == doctest::Approx(d).epsilon(1e-12));
    CHECK(sp.right.x == doctest::Approx(d).epsilon(1e-12));
    CHECK(sp.right.y == doctest::Approx(d).epsilon(1e-12));

    sp = sensor_positions({3.0, 4.0}, 1.234, 0.0);
    CHECK(sp.left.x == 3.0);
    CHECK(sp.left.y == 4.0);
    CHECK(sp.right.x == 3.0);
    CHECK(sp.right.y == 4.0);
}

TEST_CASE("heading derivative is the scaled motor phase angle") {
    CHECK(heading_derivative(0.0, 1.0) == 0.0);
    CHECK(heading_derivative(pi / 2, 1.0) == doctest::Approx(pi / 2));
    CHECK(heading_derivative(0.3, -2.0) == doctest::Approx(-0.6));
}

TEST_CASE("motor lead turns the heading counterclockwise over one step") {
    // phi_v3 slightly ahead of phi_v4, no input, no coupling: theta must rise.
    AgentState agent = make_agent(0.0, 0.0, {0.0, 0.0, 0.05, 0.0});
    agent.heading_gain = 1.0;
    const std::vector<Vec2> positions{agent.position};
    const StepResult step = step_agent(agent, single_source_env(), positions, 0, 0.01);
    CHECK(step.state.heading > agent.heading);
}

TEST_CASE("without input and with equal phases the agent runs straight") {
    AgentState agent = make_agent(0.0, 1.0, {0.2, 0.2, 0.2, 0.2}, {3.0, 7.0}, 0.9);
    const std::vector<Vec2> positions{agent.position};
    const EnvironmentSpec env = single_source_env();

    AgentState current = agent;
    for (int i = 0; i < 100; ++i)
        current = step_agent(current, env, positions, 0, 0.01).state;

    CHECK(current.heading == doctest::Approx(0.9).epsilon(1e-12));
    const double traveled = distance(current.position, agent.position);
    CHECK(traveled == doctest::Approx(10.0 * 1.0).epsilon(1e-12));
}

TEST_CASE("step length equals speed*dt for unfrozen agents") {
    std::mt19937_64 rng(21);
    const EnvironmentSpec env = single_source_env();
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, 4> phases;
        for (auto& p : phases) p = uniform(rng, 0.0, two_pi);
        AgentState agent = make_agent(5.0, uniform(rng, 0.1, 2.0), phases,
                                      {uniform(rng, -50, 50), uniform(rng, -120, -20)},
                                      uniform(rng, -pi, pi));
        const std::vector<Vec2> positions{agent.position};
        const StepResult step = step_agent(agent, env, positions, 0, 0.01);
        CHECK(distance(step.state.position, agent.position) ==
              doctest::Approx(agent.speed * 0.01).epsilon(1e-12));
    }
}

TEST_CASE("frozen agents keep their position while phases advance") {
    AgentState agent = make_agent(5.0, 1.0, {0.1, 0.4, 0.7, 1.0});
    agent.frozen = true;
    const std::vector<Vec2> positions{agent.position};
    const StepResult step = step_agent(agent, single_source_env(), positions, 0, 0.01);
    CHECK(step.state.position == agent.position);
    CHECK(step.state.frozen);
    for (std::size_t i = 0; i < kNodes; ++i)
        CHECK(step.state.network.phases[i] != agent.network.phases[i]);
}

TEST_CASE("one step matches an inline rk4 expansion") {
    const std::array<double, 4> phases{0.37, 4.91, 2.05, 5.66};
    AgentState agent = make_agent(5.0, 0.8, phases, {12.0, -77.0}, 0.61);
    agent.heading_gain = 1.0;
    std::vector<Vec2> positions{agent.position, {-20.0, -50.0}};
    EnvironmentSpec env = single_source_env();
    env.social_strength = 1.2;
    env.social_aggregation = SocialAggregation::Sum;

    const double dt = 0.01;
    const StepResult step = step_agent(agent, env, positions, 0, dt);

    // Independent expansion: sample sensors, then evaluate the classical
    // stages with explicit arithmetic on the 5-dimensional state.
    const SensorPair sensors = sensor_positions(agent.position, agent.heading, agent.body_radius);
    const double il = perceived_stimulus(env, positions, 0, sensors.left);
    const double ir = perceived_stimulus(env, positions, 0, sensors.right);

    auto deriv = [&](const std::array<double, 5>& y) {
        OscillatorNetwork net = agent.network;
        net.phases = {y[0], y[1], y[2], y[3]};
        const PhaseVector d = hkb_derivatives(net, il, ir);
        return std::array<double, 5>{d[0], d[1], d[2], d[3],
                                     phase_difference(y[2], y[3]) * agent.heading_gain};
    };
    const std::array<double, 5> y0{phases[0], phases[1], phases[2], phases[3], agent.heading};
    const auto k1 = deriv(y0);
    std::array<double, 5> y1;
    for (int i = 0; i < 5; ++i) y1[i] = y0[i] + 0.5 * dt * k1[i];
    const auto k2 = deriv(y1);
    std::array<double, 5> y2;
    for (int i = 0; i < 5; ++i) y2[i] = y0[i] + 0.5 * dt * k2[i];
    const auto k3 = deriv(y2);
    std::array<double, 5> y3;
    for (int i = 0; i < 5; ++i) y3[i] = y0[i] + dt * k3[i];
    const auto k4 = deriv(y3);
    std::array<double, 5> yn;
    for (int i = 0; i < 5; ++i)
        yn[i] = y0[i] + dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);

    for (std::size_t i = 0; i < kNodes; ++i)
        CHECK(step.state.network.phases[i] == doctest::Approx(wrap_phase(yn[i])).epsilon(1e-10));
    CHECK(step.state.heading == doctest::Approx(yn[4]).epsilon(1e-10));
    const Vec2 expected_pos{agent.position.x + agent.speed * dt * std::cos(yn[4]),
                            agent.position.y + agent.speed * dt * std::sin(yn[4])};
    CHECK(step.state.position.x == doctest::Approx(expected_pos.x).epsilon(1e-10));
    CHECK(step.state.position.y == doctest::Approx(expected_pos.y).epsilon(1e-10));
    CHECK(step.input_left == il);
    CHECK(step.input_right == ir);
}
