#include "hkbsim/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hkbsim/config.hpp"

namespace hkb {

namespace {

constexpr char kTrajectoryHeader[] =
    "t_s,agent,x_cm,y_cm,theta_rad,phi1_rad,phi2_rad,phi3_rad,phi4_rad,I_left,I_right,frozen";

constexpr char kMetricColumns[] =
    "performance,mean_kop,sd_kop,movement_mean_kop,movement_sd_kop,mean_plv,plv_full,"
    "intra_wpli,inter_wpli";

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& context) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument("bad number '" + s + "' in " + context);
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

void append_summary(std::string& out, const MetricSummary& s) {
    out += format_double(s.performance);
    out += ',';
    out += format_double(s.mean_kop);
    out += ',';
    out += format_double(s.sd_kop);
    out += ',';
    out += format_double(s.movement_mean_kop);
    out += ',';
    out += format_double(s.movement_sd_kop);
    out += ',';
    out += format_double(s.mean_plv);
    out += ',';
    out += format_double(s.plv_full);
    out += ',';
    out += format_double(s.intra_wpli);
    out += ',';
    out += format_double(s.inter_wpli);
}

} // namespace

std::string trajectory_to_csv(const SimulationRecord& record) {
    ConfigDocument doc;
    doc.run = record.config;
    std::string config_line = serialize_config(doc);
    // Flatten the config echo onto a single comment line.
    std::string flat;
    flat.reserve(config_line.size());
    for (char c : config_line)
        if (c != '\n') flat += c;

    std::string out;
    out += "# hkbsim trajectory v1\n";
    out += "# config: ";
    out += flat;
    out += '\n';
    out += kTrajectoryHeader;
    out += '\n';
    for (const Frame& frame : record.frames) {
        for (std::size_t i = 0; i < frame.agents.size(); ++i) {
            const AgentSample& a = frame.agents[i];
            out += format_double(frame.t);
            out += ',';
            out += std::to_string(i);
            out += ',';
            out += format_double(a.position.x);
            out += ',';
            out += format_double(a.position.y);
            out += ',';
            out += format_double(a.heading);
            out += ',';
            for (double phi : a.phases) {
                out += format_double(phi);
                out += ',';
            }
            out += format_double(a.input_left);
            out += ',';
            out += format_double(a.input_right);
            out += ',';
            out += a.frozen ? '1' : '0';
            out += '\n';
        }
    }
    return out;
}

SimulationRecord trajectory_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SimulationRecord record;
    bool config_seen = false;
    bool header_seen = false;
    std::size_t row = 0;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# config: ", 0) == 0) {
            record.config = parse_config(line.substr(10)).run;
            config_seen = true;
            continue;
        }
        if (line[0] == '#') continue;
        if (!header_seen) {
            if (line != kTrajectoryHeader)
                throw std::invalid_argument("unexpected trajectory header: " + line);
            header_seen = true;
            continue;
        }
        if (!config_seen) throw std::invalid_argument("trajectory file lacks a config echo");

        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 12)
            throw std::invalid_argument("trajectory row " + std::to_string(row) +
                                        " has " + std::to_string(fields.size()) + " fields");
        const std::string context = "trajectory row " + std::to_string(row);
        const double t = parse_double(fields[0], context);
        const auto agent = static_cast<std::size_t>(std::stoul(fields[1]));
        if (agent == 0) record.frames.push_back({t, {}});
        if (record.frames.empty() || agent != record.frames.back().agents.size())
            throw std::invalid_argument("trajectory rows are not agent-minor ordered at row " +
                                        std::to_string(row));
        AgentSample s;
        s.position = {parse_double(fields[2], context), parse_double(fields[3], context)};
        s.heading = parse_double(fields[4], context);
        for (std::size_t n = 0; n < kNodes; ++n) s.phases[n] = parse_double(fields[5 + n], context);
        s.input_left = parse_double(fields[9], context);
        s.input_right = parse_double(fields[10], context);
        s.frozen = fields[11] == "1";
        record.frames.back().agents.push_back(s);
        ++row;
    }
    if (!header_seen || record.frames.empty())
        throw std::invalid_argument("trajectory file contains no data rows");
    record.dt_record = record.config.dt_s * record.config.record_stride;
    return record;
}

std::string metrics_to_csv(const std::vector<std::string>& coord_names,
                           const std::vector<SweepRow>& rows) {
    std::string out;
    out += "# hkbsim metrics v1\n";
    out += "# sd convention: population (1/N)\n";
    for (const auto& name : coord_names) {
        out += name;
        out += ',';
    }
    out += "repetition,seed,";
    out += kMetricColumns;
    out += '\n';
    for (const SweepRow& row : rows) {
        for (const auto& [name, value] : row.coords) {
            out += format_double(value);
            out += ',';
        }
        out += std::to_string(row.repetition);
        out += ',';
        out += std::to_string(row.seed);
        out += ',';
        append_summary(out, row.summary);
        out += '\n';
    }
    return out;
}

std::string metrics_to_csv(const SimulationRecord& record, const MetricSummary& summary) {
    std::string out;
    out += "# hkbsim metrics v1\n";
    out += "# sd convention: population (1/N)\n";
    out += "seed,";
    out += kMetricColumns;
    out += '\n';
    out += std::to_string(record.config.seed);
    out += ',';
    append_summary(out, summary);
    out += '\n';
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace hkb
