#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "hkbsim/config.hpp"
#include "hkbsim/io.hpp"
#include "hkbsim/metrics.hpp"

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("HKBSIM_OUT_DIR")) return env;
    return ".";
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir) {
    hkb::ConfigDocument doc = hkb::parse_config(hkb::read_file(config_path));
    if (seed) doc.run.seed = *seed;
    const hkb::SimulationRecord record = hkb::run(doc.run);
    const hkb::MetricSummary summary = hkb::summarize(record, doc.run.metrics);

    std::filesystem::create_directories(out_dir);
    const std::string traj_path = join(out_dir, "trajectory.csv");
    const std::string metrics_path = join(out_dir, "metrics.csv");
    hkb::write_file(traj_path, hkb::trajectory_to_csv(record));
    hkb::write_file(metrics_path, hkb::metrics_to_csv(record, summary));
    std::cout << traj_path << "\n" << metrics_path << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, std::optional<std::uint64_t> seed,
              std::optional<int> resolution, int workers, const std::string& out_dir) {
    hkb::ConfigDocument doc = hkb::parse_config(hkb::read_file(config_path));
    if (!doc.sweep)
        throw std::invalid_argument("config has no sweep section; use `run` for single runs");
    if (seed) doc.sweep->seed_base = *seed;
    if (resolution) doc.sweep->resolution = *resolution;

    const hkb::SweepResult result = hkb::run_sweep(*doc.sweep, workers);

    std::filesystem::create_directories(out_dir);
    const std::string path =
        join(out_dir, "sweep_" + hkb::family_name(doc.sweep->family) + ".csv");
    hkb::write_file(path, hkb::metrics_to_csv(result.coord_names, result.rows));
    std::cout << path << "\n";
    return 0;
}

int cmd_metrics(const std::string& trajectory_path, const std::string& out_path) {
    const hkb::SimulationRecord record =
        hkb::trajectory_from_csv(hkb::read_file(trajectory_path));
    const hkb::MetricSummary summary = hkb::summarize(record, record.config.metrics);
    const std::string csv = hkb::metrics_to_csv(record, summary);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        hkb::write_file(out_path, csv);
        std::cout << out_path << "\n";
    }
    return 0;
}

int cmd_validate(const std::string& config_path) {
    hkb::parse_config(hkb::read_file(config_path));
    std::cout << "ok\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"HKB phase-oscillator agent simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string trajectory_path;
    std::string out_dir = default_out_dir();
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> resolution;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    auto* run = app.add_subcommand("run", "simulate one configuration");
    run->add_option("config", config_path, "JSON configuration file")->required();
    run->add_option("--seed", seed, "override the run seed");
    run->add_option("--out-dir", out_dir, "output directory (default $HKBSIM_OUT_DIR or .)");

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("config", config_path, "JSON configuration file with a sweep section")
        ->required();
    sweep->add_option("--workers", workers, "parallel worker threads");
    sweep->add_option("--seed", seed, "override the sweep seed base");
    sweep->add_option("--resolution", resolution, "override the ternary lattice resolution");
    sweep->add_option("--out-dir", out_dir, "output directory (default $HKBSIM_OUT_DIR or .)");

    auto* metrics = app.add_subcommand("metrics", "recompute metrics from a trajectory file");
    metrics->add_option("trajectory", trajectory_path, "trajectory CSV from `run`")->required();
    metrics->add_option("--out", out_path, "write to a file instead of stdout");

    auto* validate = app.add_subcommand("validate", "check a configuration file");
    validate->add_option("config", config_path, "JSON configuration file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, seed, out_dir);
        if (sweep->parsed()) return cmd_sweep(config_path, seed, resolution, workers, out_dir);
        if (metrics->parsed()) return cmd_metrics(trajectory_path, out_path);
        if (validate->parsed()) return cmd_validate(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
