#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace hkb {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Number of oscillator nodes per agent: v1, v2 sensory; v3, v4 motor.
inline constexpr std::size_t kNodes = 4;

using PhaseVector = std::array<double, kNodes>;

/// Reduce an angle to [0, 2*pi).
inline double wrap_phase(double phi) {
    double x = std::fmod(phi, two_pi);
    if (x < 0.0) x += two_pi;
    if (x >= two_pi) x -= two_pi;  // fmod result of -eps rounds up to 2*pi
    return x;
}

/// Signed minimal-angle difference phi_i - phi_j, in (-pi, pi].
inline double phase_difference(double phi_i, double phi_j) {
    double d = std::fmod(phi_i - phi_j, two_pi);
    if (d > std::numbers::pi) d -= two_pi;
    else if (d <= -std::numbers::pi) d += two_pi;
    return d;
}

/// In-phase / anti-phase attraction exerted on node i by node j:
///   -a*sin(phi_i - phi_j) - prefactor*b*sin(2*(phi_i - phi_j))
inline double pairwise_coupling_term(double phi_i, double phi_j, double a_ij, double b_ij,
                                     double anti_phase_prefactor = 2.0) {
    const double d = phi_i - phi_j;
    return -a_ij * std::sin(d) - anti_phase_prefactor * b_ij * std::sin(2.0 * d);
}

/// Symmetric in-phase (a) and anti-phase (b) coupling strengths, rad/s.
/// The default agent only connects the contralateral sensor-motor pairs
/// (v1-v4, v2-v3) and the motor-motor pair (v3-v4).
struct CouplingMatrix {
    std::array<std::array<double, kNodes>, kNodes> a{};
    std::array<std::array<double, kNodes>, kNodes> b{};

    static CouplingMatrix standard(double a_contralateral, double a_motor, double k_ratio = 2.0) {
        CouplingMatrix m;
        m.set_pair(0, 3, a_contralateral, k_ratio);
        m.set_pair(1, 2, a_contralateral, k_ratio);
        m.set_pair(2, 3, a_motor, k_ratio);
        return m;
    }

    void set_pair(std::size_t i, std::size_t j, double a_ij, double k_ratio) {
        a[i][j] = a[j][i] = a_ij;
        b[i][j] = b[j][i] = k_ratio * a_ij;
    }
};

/// The agent's brain: four phases, intrinsic frequencies, couplings, and
/// the sensitivity c that gates stimulus input into the sensory nodes.
struct OscillatorNetwork {
    PhaseVector phases{};                       // each in [0, 2*pi)
    std::array<double, kNodes> omega{};         // rad/s
    CouplingMatrix coupling;
    double sensitivity{0.0};                    // c, rad/s per unit concentration
    double anti_phase_prefactor{2.0};

    static OscillatorNetwork standard(double sensitivity, const CouplingMatrix& coupling,
                                      double frequency_hz = 5.0) {
        OscillatorNetwork net;
        net.omega.fill(two_pi * frequency_hz);
        net.coupling = coupling;
        net.sensitivity = sensitivity;
        return net;
    }
};

/// Phase velocities of all four nodes given the sensed concentrations.
/// Sensory nodes (v1, v2) receive c*I; motor nodes receive no input term.
inline PhaseVector hkb_derivatives(const OscillatorNetwork& net, double input_left,
                                   double input_right) {
    PhaseVector rates{};
    const std::array<double, 2> inputs{input_left, input_right};
    for (std::size_t i = 0; i < kNodes; ++i) {
        double r = net.omega[i];
        if (i < 2) r += net.sensitivity * inputs[i];
        for (std::size_t j = 0; j < kNodes; ++j) {
            if (j == i) continue;
            const double a_ij = net.coupling.a[i][j];
            const double b_ij = net.coupling.b[i][j];
            if (a_ij == 0.0 && b_ij == 0.0) continue;
            r += pairwise_coupling_term(net.phases[i], net.phases[j], a_ij, b_ij,
                                        net.anti_phase_prefactor);
        }
        rates[i] = r;
    }
    return rates;
}

/// Classical fourth-order Runge-Kutta step. The caller wraps phases afterwards;
/// auxiliary components (heading) stay unwrapped.
template <std::size_t N, class F>
std::array<double, N> rk4_step(const std::array<double, N>& y, double dt, F&& f) {
    std::array<double, N> k1 = f(y);
    std::array<double, N> tmp;

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    std::array<double, N> k2 = f(tmp);

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    std::array<double, N> k3 = f(tmp);

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
    std::array<double, N> k4 = f(tmp);

    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

} // namespace hkb
