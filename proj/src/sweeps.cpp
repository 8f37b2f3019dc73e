#include "hkbsim/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace hkb {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

EnvironmentSpec standard_sources(const EnvironmentSpec& base, double ratio, bool single) {
    EnvironmentSpec env = base;
    env.sources.clear();
    env.sources.push_back({{-100.0, 0.0}, 1.0});
    if (!single) env.sources.push_back({{100.0, 0.0}, ratio});
    return env;
}

RunConfig single_agent_base(const SweepSpec& spec) {
    RunConfig cfg = spec.base;
    cfg.agent_count = 1;
    cfg.start_position = {0.0, -100.0};
    cfg.heading_spacing_rad = 0.0;
    cfg.freeze_radius_cm = 0.0;
    cfg.record_stride = 1;  // summary metrics use the full-resolution series
    cfg.environment.social_strength = 0.0;
    return cfg;
}

RunConfig group_base(const SweepSpec& spec, double ratio, double spacing_deg) {
    RunConfig cfg = spec.base;
    cfg.agent_count = 10;
    cfg.start_position = {0.0, -100.0};
    cfg.heading_spacing_rad = spacing_deg * kDegToRad;
    cfg.init_phase_mode = PhaseInitMode::InPhase;
    cfg.freeze_radius_cm = 5.0;
    cfg.record_stride = 1;
    cfg.environment = standard_sources(cfg.environment, ratio, false);
    return cfg;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point, std::uint64_t repetition) {
    std::uint64_t h = splitmix64(base ^ (point * 0x9E3779B97F4A7C15ULL));
    return splitmix64(h ^ (repetition * 0xC2B2AE3D27D4EB4FULL));
}

std::vector<SweepPoint> grid_single_gradient(const SweepSpec& spec) {
    std::vector<SweepPoint> points;
    for (double c : {0.0, 5.0}) {
        for (int n = 1; n <= 50; ++n) {
            const double a = 0.05 * n;
            SweepPoint p;
            p.coords = {{"c", c}, {"a", a}};
            p.config = single_agent_base(spec);
            p.config.environment = standard_sources(p.config.environment, 1.0, true);
            p.config.agent.sensitivity = c;
            p.config.agent.a_contralateral = a;
            p.config.agent.a_motor = a;
            p.config.init_phase_mode = PhaseInitMode::Random;
            points.push_back(std::move(p));
        }
    }
    return points;
}

std::vector<SweepPoint> grid_single_binary(const SweepSpec& spec) {
    std::vector<SweepPoint> points;
    for (int ci = 0; ci <= 10; ++ci) {
        for (int n = 1; n <= 50; ++n) {
            for (int motor = 1; motor >= 0; --motor) {
                const double a = 0.05 * n;
                SweepPoint p;
                p.coords = {{"c", static_cast<double>(ci)},
                            {"a", a},
                            {"motor_coupled", static_cast<double>(motor)}};
                p.config = single_agent_base(spec);
                p.config.environment = standard_sources(p.config.environment, 0.95, false);
                p.config.agent.sensitivity = static_cast<double>(ci);
                p.config.agent.a_contralateral = a;
                p.config.agent.a_motor = motor ? a : 0.0;
                p.config.init_phase_mode = PhaseInitMode::InPhase;
                points.push_back(std::move(p));
            }
        }
    }
    return points;
}

std::vector<std::array<int, 3>> ternary_lattice(int resolution) {
    if (resolution < 1) throw std::invalid_argument("ternary resolution must be >= 1");
    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i <= resolution; ++i) {
        for (int j = 0; j <= resolution; ++j) {
            const int k = 2 * resolution - i - j;
            if (k >= 0 && k <= resolution) triples.push_back({i, j, k});
        }
    }
    return triples;
}

std::vector<SweepPoint> grid_ternary(const SweepSpec& spec) {
    std::vector<SweepPoint> points;
    auto make_config = [&](double c, double s, double a_motor) {
        RunConfig cfg = group_base(spec, 0.8, 10.0);
        cfg.agent.sensitivity = c;
        cfg.agent.a_motor = a_motor;
        cfg.environment.social_strength = s;
        return cfg;
    };
    if (spec.raw_steps) {
        // The raw parameter steps: c by 0.5, S by 0.1; the motor coupling is
        // whatever the axis-sum constraint leaves over, kept when it lands
        // in [0, 1].
        for (int ci = 0; ci <= 20; ++ci) {
            for (int si = 0; si <= 50; ++si) {
                const double c = 0.5 * ci;
                const double s = 0.1 * si;
                const double a_motor = 2.0 - 0.1 * c - 0.2 * s;
                if (a_motor < -1e-9 || a_motor > 1.0 + 1e-9) continue;
                SweepPoint p;
                p.coords = {{"c", c}, {"S", s}, {"a_motor", std::clamp(a_motor, 0.0, 1.0)}};
                p.config = make_config(c, s, std::clamp(a_motor, 0.0, 1.0));
                points.push_back(std::move(p));
            }
        }
        return points;
    }
    const int res = spec.resolution;
    for (const auto& [i, j, k] : ternary_lattice(res)) {
        const double c = 10.0 * i / res;
        const double s = 5.0 * j / res;
        const double a_motor = 1.0 * k / res;
        SweepPoint p;
        p.coords = {{"i", static_cast<double>(i)}, {"j", static_cast<double>(j)},
                    {"k", static_cast<double>(k)}, {"c", c}, {"S", s}, {"a_motor", a_motor}};
        p.config = make_config(c, s, a_motor);
        points.push_back(std::move(p));
    }
    return points;
}

std::vector<SweepPoint> grid_env(const SweepSpec& spec) {
    std::vector<SweepPoint> points;
    for (int ri = 0; ri <= 50; ++ri) {
        for (int si = 0; si <= 50; ++si) {
            const double r = 0.02 * ri;
            const double spacing_deg = 0.36 * si;
            SweepPoint p;
            p.coords = {{"r", r}, {"spacing_deg", spacing_deg}};
            p.config = group_base(spec, r, spacing_deg);
            p.config.agent.sensitivity = 3.0;
            p.config.agent.a_contralateral = 0.5;
            p.config.agent.a_motor = 0.5;
            p.config.environment.social_strength = 1.0;
            points.push_back(std::move(p));
        }
    }
    return points;
}

std::vector<SweepPoint> build_grid(const SweepSpec& spec) {
    switch (spec.family) {
        case SweepFamily::SingleGradient: return grid_single_gradient(spec);
        case SweepFamily::SingleBinary: return grid_single_binary(spec);
        case SweepFamily::Ternary: return grid_ternary(spec);
        case SweepFamily::EnvGrid: return grid_env(spec);
    }
    throw std::logic_error("unknown sweep family");
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    if (spec.runs_per_point < 1) throw std::invalid_argument("runs_per_point must be at least 1");

    const std::vector<SweepPoint> points = build_grid(spec);
    if (points.empty()) throw std::invalid_argument("sweep grid is empty");

    SweepResult result;
    result.spec = spec;
    for (const auto& [name, value] : points.front().coords) result.coord_names.push_back(name);

    const std::size_t reps = static_cast<std::size_t>(spec.runs_per_point);
    const std::size_t total = points.size() * reps;
    result.rows.resize(total);

    std::atomic<std::size_t> next_task{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string error_message;
    std::atomic<std::size_t> completed{0};

    auto work = [&]() {
        while (true) {
            const std::size_t task = next_task.fetch_add(1);
            if (task >= total || failed.load()) return;
            const std::size_t point_index = task / reps;
            const int repetition = static_cast<int>(task % reps);
            const SweepPoint& point = points[point_index];
            try {
                RunConfig cfg = point.config;
                cfg.seed = derive_seed(spec.seed_base, point_index,
                                       static_cast<std::uint64_t>(repetition));
                const SimulationRecord record = run(cfg);
                SweepRow& row = result.rows[task];
                row.point_index = point_index;
                row.repetition = repetition;
                row.coords = point.coords;
                row.seed = cfg.seed;
                row.summary = summarize(record, cfg.metrics);
                completed.fetch_add(1);
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                if (!failed.exchange(true)) {
                    error_message = "sweep point " + std::to_string(point_index) +
                                    " repetition " + std::to_string(repetition) + " (";
                    for (std::size_t c = 0; c < point.coords.size(); ++c) {
                        if (c) error_message += ", ";
                        error_message += point.coords[c].first + "=" +
                                         std::to_string(point.coords[c].second);
                    }
                    error_message += ") failed: ";
                    error_message += e.what();
                }
            }
        }
    };

    const int n_threads = std::min<int>(workers, static_cast<int>(total));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    if (failed.load())
        throw std::runtime_error(error_message + " (" + std::to_string(completed.load()) + "/" +
                                 std::to_string(total) + " runs completed before abort)");
    return result;
}

std::string family_name(SweepFamily family) {
    switch (family) {
        case SweepFamily::SingleGradient: return "single_gradient";
        case SweepFamily::SingleBinary: return "single_binary";
        case SweepFamily::Ternary: return "ternary";
        case SweepFamily::EnvGrid: return "env_grid";
    }
    throw std::logic_error("unknown sweep family");
}

SweepFamily family_from_name(const std::string& name) {
    if (name == "single_gradient") return SweepFamily::SingleGradient;
    if (name == "single_binary") return SweepFamily::SingleBinary;
    if (name == "ternary") return SweepFamily::Ternary;
    if (name == "env_grid") return SweepFamily::EnvGrid;
    throw std::invalid_argument("unknown sweep family: " + name);
}

} // namespace hkb
