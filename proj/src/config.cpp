#include "hkbsim/config.hpp"

#include <numbers>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace hkb {

namespace {

using nlohmann::json;

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr int kSchemaVersion = 1;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument("config error at " + path + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key)) fail(path + "." + key, "unknown key");
}

const json* find(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& value, const std::string& path) {
    if (!value.is_number()) fail(path, "expected a number");
    return value.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& path,
                 double fallback) {
    const json* v = find(obj, key);
    return v ? get_number(*v, path + "." + key) : fallback;
}

int int_or(const json& obj, const std::string& key, const std::string& path, int fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(path + "." + key, "expected an integer");
    return v->get<int>();
}

std::uint64_t uint64_or(const json& obj, const std::string& key, const std::string& path,
                        std::uint64_t fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_unsigned() && !v->is_number_integer())
        fail(path + "." + key, "expected a non-negative integer");
    if (v->is_number_integer() && v->get<std::int64_t>() < 0)
        fail(path + "." + key, "expected a non-negative integer");
    return v->get<std::uint64_t>();
}

bool bool_or(const json& obj, const std::string& key, const std::string& path, bool fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(path + "." + key, "expected a boolean");
    return v->get<bool>();
}

std::string string_or(const json& obj, const std::string& key, const std::string& path,
                      const std::string& fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) fail(path + "." + key, "expected a string");
    return v->get<std::string>();
}

Vec2 get_vec2(const json& value, const std::string& path) {
    if (!value.is_array() || value.size() != 2) fail(path, "expected [x, y]");
    return {get_number(value[0], path + "[0]"), get_number(value[1], path + "[1]")};
}

EnvironmentSpec parse_environment(const json* obj) {
    EnvironmentSpec env;
    env.sources = {{{-100.0, 0.0}, 1.0}};
    if (!obj) return env;
    const std::string path = "environment";
    if (!obj->is_object()) fail(path, "expected an object");
    reject_unknown_keys(*obj, path,
                        {"sources", "lambda_env_per_cm", "lambda_social_per_cm",
                         "social_strength", "social_aggregation", "arena_cm"});

    if (const json* sources = find(*obj, "sources")) {
        if (!sources->is_array() || sources->empty() || sources->size() > 2)
            fail(path + ".sources", "expected an array of 1 or 2 sources");
        env.sources.clear();
        for (std::size_t i = 0; i < sources->size(); ++i) {
            const json& s = (*sources)[i];
            const std::string spath = path + ".sources[" + std::to_string(i) + "]";
            if (!s.is_object()) fail(spath, "expected an object");
            reject_unknown_keys(s, spath, {"position_cm", "quality"});
            const json* pos = find(s, "position_cm");
            if (!pos) fail(spath + ".position_cm", "missing required field");
            StimulusSource src;
            src.position = get_vec2(*pos, spath + ".position_cm");
            src.quality = number_or(s, "quality", spath, 1.0);
            if (src.quality < 0.0 || src.quality > 1.0)
                fail(spath + ".quality", "must lie in [0, 1]");
            env.sources.push_back(src);
        }
    }
    env.lambda_env = number_or(*obj, "lambda_env_per_cm", path, env.lambda_env);
    env.lambda_social = number_or(*obj, "lambda_social_per_cm", path, env.lambda_social);
    env.social_strength = number_or(*obj, "social_strength", path, env.social_strength);
    if (env.lambda_env <= 0.0) fail(path + ".lambda_env_per_cm", "must be positive");
    if (env.lambda_social <= 0.0) fail(path + ".lambda_social_per_cm", "must be positive");
    if (env.social_strength < 0.0) fail(path + ".social_strength", "must be non-negative");

    const std::string agg = string_or(*obj, "social_aggregation", path, "mean");
    if (agg == "mean") env.social_aggregation = SocialAggregation::Mean;
    else if (agg == "sum") env.social_aggregation = SocialAggregation::Sum;
    else fail(path + ".social_aggregation", "expected \"mean\" or \"sum\"");

    if (const json* arena = find(*obj, "arena_cm")) {
        const Vec2 a = get_vec2(*arena, path + ".arena_cm");
        env.arena_width = a.x;
        env.arena_height = a.y;
    }
    return env;
}

void parse_agent(const json* obj, RunConfig& cfg) {
    if (!obj) return;
    const std::string path = "agent";
    if (!obj->is_object()) fail(path, "expected an object");
    reject_unknown_keys(*obj, path,
                        {"count", "start_position_cm", "heading_spacing_deg", "heading_base_rad",
                         "stimulus_sensitivity", "coupling_a", "coupling_a_motor", "k_ratio",
                         "anti_phase_prefactor", "oscillator_frequency_hz", "speed_cm_per_s",
                         "body_radius_cm", "heading_gain_per_s"});

    cfg.agent_count = int_or(*obj, "count", path, cfg.agent_count);
    if (cfg.agent_count < 1) fail(path + ".count", "must be at least 1");
    if (const json* sp = find(*obj, "start_position_cm"))
        cfg.start_position = get_vec2(*sp, path + ".start_position_cm");
    cfg.heading_spacing_rad =
        number_or(*obj, "heading_spacing_deg", path, cfg.heading_spacing_rad / kDegToRad) *
        kDegToRad;
    if (const json* hb = find(*obj, "heading_base_rad")) {
        if (!hb->is_null()) cfg.heading_base_rad = get_number(*hb, path + ".heading_base_rad");
    }

    AgentParams& a = cfg.agent;
    a.sensitivity = number_or(*obj, "stimulus_sensitivity", path, a.sensitivity);
    a.a_contralateral = number_or(*obj, "coupling_a", path, a.a_contralateral);
    a.a_motor = number_or(*obj, "coupling_a_motor", path, a.a_contralateral);
    a.k_ratio = number_or(*obj, "k_ratio", path, a.k_ratio);
    a.anti_phase_prefactor = number_or(*obj, "anti_phase_prefactor", path, a.anti_phase_prefactor);
    a.frequency_hz = number_or(*obj, "oscillator_frequency_hz", path, a.frequency_hz);
    a.speed = number_or(*obj, "speed_cm_per_s", path, a.speed);
    a.body_radius = number_or(*obj, "body_radius_cm", path, a.body_radius);
    a.heading_gain = number_or(*obj, "heading_gain_per_s", path, a.heading_gain);
    if (a.sensitivity < 0.0) fail(path + ".stimulus_sensitivity", "must be non-negative");
    if (a.a_contralateral < 0.0) fail(path + ".coupling_a", "must be non-negative");
    if (a.a_motor < 0.0) fail(path + ".coupling_a_motor", "must be non-negative");
    if (a.frequency_hz <= 0.0) fail(path + ".oscillator_frequency_hz", "must be positive");
    if (a.speed <= 0.0) fail(path + ".speed_cm_per_s", "must be positive");
    if (a.body_radius < 0.0) fail(path + ".body_radius_cm", "must be non-negative");
}

void parse_metrics(const json* obj, MetricParams& m) {
    if (!obj) return;
    const std::string path = "run.metrics";
    if (!obj->is_object()) fail(path, "expected an object");
    reject_unknown_keys(*obj, path,
                        {"window_samples", "stride_samples", "transient_s", "clamp_collective"});
    const int window = int_or(*obj, "window_samples", path, static_cast<int>(m.window));
    const int stride = int_or(*obj, "stride_samples", path, static_cast<int>(m.stride));
    if (window < 1) fail(path + ".window_samples", "must be at least 1");
    if (stride < 1) fail(path + ".stride_samples", "must be at least 1");
    m.window = static_cast<std::size_t>(window);
    m.stride = static_cast<std::size_t>(stride);
    m.transient_s = number_or(*obj, "transient_s", path, m.transient_s);
    if (m.transient_s < 0.0) fail(path + ".transient_s", "must be non-negative");
    m.clamp_collective = bool_or(*obj, "clamp_collective", path, m.clamp_collective);
}

void parse_run(const json* obj, RunConfig& cfg) {
    bool freeze_given = false;
    if (obj) {
        const std::string path = "run";
        if (!obj->is_object()) fail(path, "expected an object");
        reject_unknown_keys(*obj, path,
                            {"duration_s", "dt_s", "seed", "init_phase_mode", "freeze_radius_cm",
                             "record_stride", "metrics"});
        cfg.duration_s = number_or(*obj, "duration_s", path, cfg.duration_s);
        cfg.dt_s = number_or(*obj, "dt_s", path, cfg.dt_s);
        if (cfg.dt_s <= 0.0) fail(path + ".dt_s", "must be positive");
        if (cfg.duration_s <= 0.0) fail(path + ".duration_s", "must be positive");
        cfg.seed = uint64_or(*obj, "seed", path, cfg.seed);
        const std::string mode = string_or(*obj, "init_phase_mode", path, "in_phase");
        if (mode == "in_phase") cfg.init_phase_mode = PhaseInitMode::InPhase;
        else if (mode == "random") cfg.init_phase_mode = PhaseInitMode::Random;
        else fail(path + ".init_phase_mode", "expected \"in_phase\" or \"random\"");
        if (const json* fr = find(*obj, "freeze_radius_cm")) {
            cfg.freeze_radius_cm = get_number(*fr, path + ".freeze_radius_cm");
            if (cfg.freeze_radius_cm < 0.0) fail(path + ".freeze_radius_cm", "must be non-negative");
            freeze_given = true;
        }
        cfg.record_stride = int_or(*obj, "record_stride", path, cfg.record_stride);
        if (cfg.record_stride < 1) fail(path + ".record_stride", "must be at least 1");
        parse_metrics(find(*obj, "metrics"), cfg.metrics);
    }
    if (!freeze_given) cfg.freeze_radius_cm = cfg.agent_count > 1 ? 5.0 : 0.0;
}

SweepSpec parse_sweep(const json& obj, const RunConfig& base) {
    const std::string path = "sweep";
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path,
                        {"family", "runs_per_point", "seed_base", "resolution", "raw_steps"});
    SweepSpec spec;
    spec.base = base;
    const json* fam = find(obj, "family");
    if (!fam) fail(path + ".family", "missing required field");
    if (!fam->is_string()) fail(path + ".family", "expected a string");
    try {
        spec.family = family_from_name(fam->get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(path + ".family", e.what());
    }
    const int default_reps = spec.family == SweepFamily::SingleGradient ? 50 : 1;
    spec.runs_per_point = int_or(obj, "runs_per_point", path, default_reps);
    if (spec.runs_per_point < 1) fail(path + ".runs_per_point", "must be at least 1");
    spec.seed_base = uint64_or(obj, "seed_base", path, 0);
    spec.resolution = int_or(obj, "resolution", path, spec.resolution);
    if (spec.resolution < 1) fail(path + ".resolution", "must be at least 1");
    spec.raw_steps = bool_or(obj, "raw_steps", path, false);
    return spec;
}

} // namespace

ConfigDocument parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config error at $: expected an object");
    reject_unknown_keys(doc, "$", {"schema_version", "environment", "agent", "run", "sweep"});

    if (const json* version = find(doc, "schema_version")) {
        if (!version->is_number_integer() || version->get<int>() != kSchemaVersion)
            fail("$.schema_version", "unsupported schema version");
    }

    ConfigDocument out;
    out.run.environment = parse_environment(find(doc, "environment"));
    parse_agent(find(doc, "agent"), out.run);
    parse_run(find(doc, "run"), out.run);
    validate(out.run);
    if (const json* sweep = find(doc, "sweep")) out.sweep = parse_sweep(*sweep, out.run);
    return out;
}

std::string serialize_config(const ConfigDocument& doc) {
    json j;
    j["schema_version"] = kSchemaVersion;

    const RunConfig& cfg = doc.run;
    json env;
    json sources = json::array();
    for (const auto& s : cfg.environment.sources)
        sources.push_back({{"position_cm", {s.position.x, s.position.y}}, {"quality", s.quality}});
    env["sources"] = sources;
    env["lambda_env_per_cm"] = cfg.environment.lambda_env;
    env["lambda_social_per_cm"] = cfg.environment.lambda_social;
    env["social_strength"] = cfg.environment.social_strength;
    env["social_aggregation"] =
        cfg.environment.social_aggregation == SocialAggregation::Mean ? "mean" : "sum";
    env["arena_cm"] = {cfg.environment.arena_width, cfg.environment.arena_height};
    j["environment"] = env;

    json agent;
    agent["count"] = cfg.agent_count;
    agent["start_position_cm"] = {cfg.start_position.x, cfg.start_position.y};
    agent["heading_spacing_deg"] = cfg.heading_spacing_rad / kDegToRad;
    if (cfg.heading_base_rad) agent["heading_base_rad"] = *cfg.heading_base_rad;
    agent["stimulus_sensitivity"] = cfg.agent.sensitivity;
    agent["coupling_a"] = cfg.agent.a_contralateral;
    agent["coupling_a_motor"] = cfg.agent.a_motor;
    agent["k_ratio"] = cfg.agent.k_ratio;
    agent["anti_phase_prefactor"] = cfg.agent.anti_phase_prefactor;
    agent["oscillator_frequency_hz"] = cfg.agent.frequency_hz;
    agent["speed_cm_per_s"] = cfg.agent.speed;
    agent["body_radius_cm"] = cfg.agent.body_radius;
    agent["heading_gain_per_s"] = cfg.agent.heading_gain;
    j["agent"] = agent;

    json run;
    run["duration_s"] = cfg.duration_s;
    run["dt_s"] = cfg.dt_s;
    run["seed"] = cfg.seed;
    run["init_phase_mode"] = cfg.init_phase_mode == PhaseInitMode::InPhase ? "in_phase" : "random";
    run["freeze_radius_cm"] = cfg.freeze_radius_cm;
    run["record_stride"] = cfg.record_stride;
    run["metrics"] = {{"window_samples", static_cast<int>(cfg.metrics.window)},
                      {"stride_samples", static_cast<int>(cfg.metrics.stride)},
                      {"transient_s", cfg.metrics.transient_s},
                      {"clamp_collective", cfg.metrics.clamp_collective}};
    j["run"] = run;

    if (doc.sweep) {
        const SweepSpec& s = *doc.sweep;
        j["sweep"] = {{"family", family_name(s.family)},
                      {"runs_per_point", s.runs_per_point},
                      {"seed_base", s.seed_base},
                      {"resolution", s.resolution},
                      {"raw_steps", s.raw_steps}};
    }
    return j.dump(2) + "\n";
}

} // namespace hkb
