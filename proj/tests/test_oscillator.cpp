#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hkbsim/oscillator.hpp"

using namespace hkb;

namespace {

constexpr double pi = std::numbers::pi;

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// Literal expansion of the four update equations, written independently of
// hkb_derivatives so the two can cross-check each other.
std::array<double, 4> reference_rates(const std::array<double, 4>& phi, double omega, double c,
                                      double a_contra, double a_motor, double k, double i_left,
                                      double i_right) {
    const double b_contra = k * a_contra;
    const double b_motor = k * a_motor;
    auto pull = [](double from, double to, double a, double b) {
        return -a * std::sin(from - to) - 2.0 * b * std::sin(2.0 * (from - to));
    };
    std::array<double, 4> r{};
    r[0] = omega + c * i_left + pull(phi[0], phi[3], a_contra, b_contra);
    r[1] = omega + c * i_right + pull(phi[1], phi[2], a_contra, b_contra);
    r[2] = omega + pull(phi[2], phi[1], a_contra, b_contra) + pull(phi[2], phi[3], a_motor, b_motor);
    r[3] = omega + pull(phi[3], phi[0], a_contra, b_contra) + pull(phi[3], phi[2], a_motor, b_motor);
    return r;
}

OscillatorNetwork make_network(double c, double a, const std::array<double, 4>& phases) {
    OscillatorNetwork net = OscillatorNetwork::standard(c, CouplingMatrix::standard(a, a));
    net.phases = phases;
    return net;
}

} // namespace

TEST_CASE("wrap_phase maps onto [0, 2pi)") {
    CHECK(wrap_phase(0.0) == 0.0);
    CHECK(wrap_phase(two_pi) == 0.0);
    CHECK(wrap_phase(-pi / 2) == doctest::Approx(3 * pi / 2).epsilon(1e-14));

    std::mt19937_64 rng(41);
    for (int i = 0; i < 1000; ++i) {
        const double phi = uniform(rng, -50.0, 50.0);
        const double w = wrap_phase(phi);
        CHECK(w >= 0.0);
        CHECK(w < two_pi);
        CHECK(std::abs(std::remainder(w - phi, two_pi)) < 1e-9);
    }
}

TEST_CASE("phase_difference maps onto (-pi, pi]") {
    CHECK(phase_difference(0.0, 0.0) == 0.0);
    CHECK(phase_difference(0.1, two_pi - 0.1) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(phase_difference(0.0, pi) == doctest::Approx(pi));
    CHECK(phase_difference(0.0, pi) > 0.0);  // boundary maps to +pi

    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        const double a = uniform(rng, -20.0, 20.0);
        const double b = uniform(rng, -20.0, 20.0);
        const double d = phase_difference(a, b);
        CHECK(d > -pi);
        CHECK(d <= pi);
        CHECK(std::abs(std::remainder(d - (a - b), two_pi)) < 1e-9);
    }
}

TEST_CASE("pairwise coupling term at the equilibria") {
    CHECK(pairwise_coupling_term(1.3, 1.3, 0.7, 1.4) == 0.0);
    CHECK(pairwise_coupling_term(pi, 0.0, 0.7, 1.4) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pairwise_coupling_term(pi / 2, 0.0, 1.0, 2.0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("pairwise coupling term is 2pi-periodic and odd") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        const double d = uniform(rng, -pi, pi);
        const double a = uniform(rng, 0.0, 3.0);
        const double b = uniform(rng, 0.0, 3.0);
        const double base = pairwise_coupling_term(d, 0.0, a, b);
        CHECK(pairwise_coupling_term(d + two_pi, 0.0, a, b) == doctest::Approx(base).epsilon(1e-9));
        CHECK(pairwise_coupling_term(-d, 0.0, a, b) == doctest::Approx(-base).epsilon(1e-12));
    }
}

TEST_CASE("hkb derivatives reduce to omega without coupling terms") {
    const OscillatorNetwork net = make_network(5.0, 0.8, {1.1, 1.1, 1.1, 1.1});
    const PhaseVector rates = hkb_derivatives(net, 0.0, 0.0);
    for (double r : rates) CHECK(r == doctest::Approx(two_pi * 5.0).epsilon(1e-15));
}

TEST_CASE("input term is gated by the sensitivity") {
    const std::array<double, 4> phases{0.3, 5.9, 2.2, 4.1};
    const OscillatorNetwork net = make_network(0.0, 1.3, phases);
    const PhaseVector with_input = hkb_derivatives(net, 0.7, 0.2);
    const PhaseVector without = hkb_derivatives(net, 0.0, 0.0);
    for (std::size_t i = 0; i < kNodes; ++i) CHECK(with_input[i] == without[i]);
}

TEST_CASE("hkb derivatives match a term-by-term reference expansion") {
    std::mt19937_64 rng(44);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        std::array<double, 4> phases;
        for (auto& p : phases) p = uniform(rng, 0.0, two_pi);
        const OscillatorNetwork net = make_network(5.0, 0.5, phases);
        const PhaseVector rates = hkb_derivatives(net, 0.3, 0.1);
        const std::array<double, 4> expected =
            reference_rates(phases, two_pi * 5.0, 5.0, 0.5, 0.5, 2.0, 0.3, 0.1);
        for (std::size_t n = 0; n < kNodes; ++n)
            worst = std::max(worst, std::abs(rates[n] - expected[n]));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("hkb derivatives are invariant under a global phase shift") {
    std::mt19937_64 rng(45);
    for (int i = 0; i < 200; ++i) {
        std::array<double, 4> phases;
        for (auto& p : phases) p = uniform(rng, 0.0, two_pi);
        const double shift = uniform(rng, -10.0, 10.0);
        std::array<double, 4> shifted;
        for (std::size_t n = 0; n < kNodes; ++n) shifted[n] = phases[n] + shift;
        const PhaseVector r1 = hkb_derivatives(make_network(5.0, 1.2, phases), 0.4, 0.9);
        const PhaseVector r2 = hkb_derivatives(make_network(5.0, 1.2, shifted), 0.4, 0.9);
        for (std::size_t n = 0; n < kNodes; ++n)
            CHECK(r1[n] == doctest::Approx(r2[n]).epsilon(1e-9));
    }
}

TEST_CASE("rk4 is exact for a constant derivative") {
    const std::array<double, 4> y{0.0, 1.0, 2.0, 3.0};
    const auto next = rk4_step(y, 0.25, [](const std::array<double, 4>&) {
        return std::array<double, 4>{2.0, 2.0, 2.0, 2.0};
    });
    for (std::size_t i = 0; i < 4; ++i) CHECK(next[i] == y[i] + 0.5);
}

TEST_CASE("rk4 matches the exponential within 1e-10") {
    const std::array<double, 1> y{1.0};
    const auto next = rk4_step(y, 0.01, [](const std::array<double, 1>& v) {
        return std::array<double, 1>{-v[0]};
    });
    CHECK(std::abs(next[0] - std::exp(-0.01)) < 1e-10);
}

namespace {

std::array<double, 4> integrate_hkb(std::array<double, 4> y, double dt, int steps,
                                    const OscillatorNetwork& proto) {
    auto f = [&proto](const std::array<double, 4>& v) {
        OscillatorNetwork net = proto;
        net.phases = v;
        return hkb_derivatives(net, 0.3, 0.1);
    };
    for (int s = 0; s < steps; ++s) y = rk4_step(y, dt, f);
    return y;
}

double max_abs_diff(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("halving dt cuts the error of one coarse step about 16x") {
    const OscillatorNetwork proto = make_network(5.0, 1.0, {});
    const std::array<double, 4> y0{0.4, 2.9, 1.7, 5.2};
    const double dt = 0.02;
    const auto reference = integrate_hkb(y0, dt / 100.0, 100, proto);
    const double e_coarse = max_abs_diff(integrate_hkb(y0, dt, 1, proto), reference);
    const double e_fine = max_abs_diff(integrate_hkb(y0, dt / 2.0, 2, proto), reference);
    CHECK(e_coarse / e_fine == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("empirical convergence order over one second is at least 3.9") {
    const OscillatorNetwork proto = make_network(5.0, 1.0, {});
    const std::array<double, 4> y0{0.4, 2.9, 1.7, 5.2};
    const auto reference = integrate_hkb(y0, 1.0 / 10000.0, 10000, proto);
    const double e1 = max_abs_diff(integrate_hkb(y0, 0.01, 100, proto), reference);
    const double e2 = max_abs_diff(integrate_hkb(y0, 0.005, 200, proto), reference);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 3.9);
}

TEST_CASE("equal phases stay equal under integration without input") {
    OscillatorNetwork net = make_network(0.0, 1.4, {0.7, 0.7, 0.7, 0.7});
    auto f = [&net](const std::array<double, 4>& v) {
        OscillatorNetwork n = net;
        n.phases = v;
        return hkb_derivatives(n, 0.0, 0.0);
    };
    std::array<double, 4> y = net.phases;
    for (int s = 0; s < 1000; ++s) {
        y = rk4_step(y, 0.01, f);
        for (std::size_t i = 0; i < kNodes; ++i) y[i] = wrap_phase(y[i]);
        CHECK(y[0] == y[1]);
        CHECK(y[0] == y[2]);
        CHECK(y[0] == y[3]);
    }
}
