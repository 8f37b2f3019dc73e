#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hkbsim/agent.hpp"
#include "hkbsim/config.hpp"
#include "hkbsim/engine.hpp"
#include "hkbsim/io.hpp"
#include "hkbsim/metrics.hpp"
#include "hkbsim/oscillator.hpp"
#include "hkbsim/sweeps.hpp"

namespace py = pybind11;

namespace {

hkb::RunConfig config_from_json(const std::string& text) {
    return hkb::parse_config(text).run;
}

py::dict summary_to_dict(const hkb::MetricSummary& s) {
    py::dict d;
    d["performance"] = s.performance;
    d["mean_kop"] = s.mean_kop;
    d["sd_kop"] = s.sd_kop;
    d["mean_plv"] = s.mean_plv;
    d["plv_full"] = s.plv_full;
    d["intra_wpli"] = s.intra_wpli;
    d["inter_wpli"] = s.inter_wpli;
    d["movement_mean_kop"] = s.movement_mean_kop;
    d["movement_sd_kop"] = s.movement_sd_kop;
    return d;
}

} // namespace

PYBIND11_MODULE(_hkbsim, m) {
    m.doc() = "HKB phase-oscillator agent simulator";

    m.def("wrap_phase", &hkb::wrap_phase, py::arg("phi"));
    m.def("phase_difference", &hkb::phase_difference, py::arg("phi_i"), py::arg("phi_j"));
    m.def("pairwise_coupling_term", &hkb::pairwise_coupling_term, py::arg("phi_i"),
          py::arg("phi_j"), py::arg("a_ij"), py::arg("b_ij"),
          py::arg("anti_phase_prefactor") = 2.0);

    m.def(
        "hkb_derivatives",
        [](const std::array<double, 4>& phases, double c, double a_contralateral, double a_motor,
           double k_ratio, double input_left, double input_right, double frequency_hz) {
            hkb::OscillatorNetwork net = hkb::OscillatorNetwork::standard(
                c, hkb::CouplingMatrix::standard(a_contralateral, a_motor, k_ratio), frequency_hz);
            net.phases = phases;
            return hkb::hkb_derivatives(net, input_left, input_right);
        },
        py::arg("phases"), py::arg("c"), py::arg("a_contralateral"), py::arg("a_motor"),
        py::arg("k_ratio") = 2.0, py::arg("input_left") = 0.0, py::arg("input_right") = 0.0,
        py::arg("frequency_hz") = 5.0,
        "Phase velocities of the standard four-node network.");

    m.def(
        "stimulus_at",
        [](const std::vector<std::pair<std::array<double, 2>, double>>& sources, double lambda_env,
           std::array<double, 2> pos) {
            hkb::EnvironmentSpec env;
            env.sources.clear();
            for (const auto& [p, q] : sources) env.sources.push_back({{p[0], p[1]}, q});
            env.lambda_env = lambda_env;
            return hkb::stimulus_at(env, {pos[0], pos[1]});
        },
        py::arg("sources"), py::arg("lambda_env"), py::arg("pos"),
        "Environmental concentration from [(position, quality), ...] sources.");

    m.def(
        "sensor_positions",
        [](std::array<double, 2> pos, double heading, double body_radius) {
            const hkb::SensorPair sp = hkb::sensor_positions({pos[0], pos[1]}, heading, body_radius);
            return std::make_pair(std::array<double, 2>{sp.left.x, sp.left.y},
                                  std::array<double, 2>{sp.right.x, sp.right.y});
        },
        py::arg("pos"), py::arg("heading"), py::arg("body_radius"));

    m.def("kop", [](const std::vector<double>& phases) { return hkb::kop(phases); },
          py::arg("phases"));
    m.def(
        "plv",
        [](const std::vector<double>& diff, std::size_t window, std::size_t stride) {
            const auto w = hkb::plv(diff, window, stride);
            return std::make_pair(w.per_window, w.mean);
        },
        py::arg("diff"), py::arg("window"), py::arg("stride") = 1);
    m.def(
        "wpli",
        [](const std::vector<double>& diff, std::size_t window, std::size_t stride) {
            const auto w = hkb::wpli(diff, window, stride);
            return std::make_pair(w.per_window, w.mean);
        },
        py::arg("diff"), py::arg("window"), py::arg("stride") = 1);

    m.def("default_config",
          [] { return hkb::serialize_config(hkb::ConfigDocument{}); },
          "The default configuration as a JSON string.");

    m.def(
        "run",
        [](const std::string& config_json) {
            const hkb::RunConfig cfg = config_from_json(config_json);
            const hkb::SimulationRecord record = hkb::run(cfg);
            py::dict out;
            out["metrics"] = summary_to_dict(hkb::summarize(record, cfg.metrics));
            py::list frames;
            for (const auto& frame : record.frames) {
                py::dict f;
                f["t"] = frame.t;
                py::list agents;
                for (const auto& a : frame.agents) {
                    py::dict d;
                    d["x"] = a.position.x;
                    d["y"] = a.position.y;
                    d["theta"] = a.heading;
                    d["phases"] = a.phases;
                    d["input_left"] = a.input_left;
                    d["input_right"] = a.input_right;
                    d["frozen"] = a.frozen;
                    agents.append(d);
                }
                f["agents"] = agents;
                frames.append(f);
            }
            out["frames"] = frames;
            return out;
        },
        py::arg("config_json"),
        "Simulate one configuration (JSON string); returns frames and metrics.");

    m.def(
        "run_sweep",
        [](const std::string& config_json, int workers) {
            const hkb::ConfigDocument doc = hkb::parse_config(config_json);
            if (!doc.sweep) throw std::invalid_argument("config has no sweep section");
            const hkb::SweepResult result = hkb::run_sweep(*doc.sweep, workers);
            py::list rows;
            for (const auto& row : result.rows) {
                py::dict d;
                for (const auto& [name, value] : row.coords) d[name.c_str()] = value;
                d["repetition"] = row.repetition;
                d["seed"] = row.seed;
                d["metrics"] = summary_to_dict(row.summary);
                rows.append(d);
            }
            return rows;
        },
        py::arg("config_json"), py::arg("workers") = 1,
        "Run a sweep (JSON string with a sweep section); returns one dict per run.");

    m.def("trajectory_csv",
          [](const std::string& config_json) {
              const hkb::RunConfig cfg = config_from_json(config_json);
              return hkb::trajectory_to_csv(hkb::run(cfg));
          },
          py::arg("config_json"), "Simulate and return the trajectory CSV text.");
}
