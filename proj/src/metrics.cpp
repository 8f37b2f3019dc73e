#include "hkbsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hkbsim/oscillator.hpp"

namespace hkb {

namespace {

// Coupled node pairs of the standard agent, 0-based.
constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kCoupledPairs{
    {{0, 3}, {1, 2}, {2, 3}}};

std::vector<double> pair_difference_series(const SimulationRecord& record,
                                           std::size_t agent_index, std::size_t node_i,
                                           std::size_t node_j, std::size_t from_frame) {
    std::vector<double> diff;
    diff.reserve(record.frames.size() - from_frame);
    for (std::size_t f = from_frame; f < record.frames.size(); ++f) {
        const auto& phases = record.frames[f].agents[agent_index].phases;
        diff.push_back(phase_difference(phases[node_i], phases[node_j]));
    }
    return diff;
}

double windowed_mean(const SimulationRecord& record, CouplingMeasure measure,
                     std::span<const double> diff, std::size_t window, std::size_t stride) {
    (void)record;
    return measure == CouplingMeasure::Plv ? plv(diff, window, stride).mean
                                           : wpli(diff, window, stride).mean;
}

void check_window(std::size_t length, std::size_t window, std::size_t stride) {
    if (window < 1) throw std::invalid_argument("window must be at least 1 sample");
    if (stride < 1) throw std::invalid_argument("stride must be at least 1 sample");
    if (window > length) throw std::invalid_argument("window exceeds series length");
}

} // namespace

double kop(std::span<const double> phases) {
    if (phases.empty()) throw std::invalid_argument("kop needs at least one phase");
    double re = 0.0;
    double im = 0.0;
    for (double p : phases) {
        re += std::cos(p);
        im += std::sin(p);
    }
    const double n = static_cast<double>(phases.size());
    return std::sqrt(re * re + im * im) / n;
}

KopStats kop_series_stats(const std::vector<std::vector<double>>& components) {
    if (components.empty()) throw std::invalid_argument("no component series given");
    const std::size_t length = components.front().size();
    if (length == 0) throw std::invalid_argument("empty component series");
    for (const auto& c : components)
        if (c.size() != length) throw std::invalid_argument("component series length mismatch");

    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<double> snapshot(components.size());
    for (std::size_t t = 0; t < length; ++t) {
        for (std::size_t c = 0; c < components.size(); ++c) snapshot[c] = components[c][t];
        const double r = kop(snapshot);
        sum += r;
        sum_sq += r * r;
    }
    const double n = static_cast<double>(length);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    return {mean, std::sqrt(var)};
}

WindowedStat plv(std::span<const double> diff, std::size_t window, std::size_t stride) {
    check_window(diff.size(), window, stride);
    WindowedStat out;
    for (std::size_t start = 0; start + window <= diff.size(); start += stride) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t t = start; t < start + window; ++t) {
            re += std::cos(diff[t]);
            im += std::sin(diff[t]);
        }
        out.per_window.push_back(std::sqrt(re * re + im * im) /
                                 static_cast<double>(window));
    }
    double sum = 0.0;
    for (double v : out.per_window) sum += v;
    out.mean = sum / static_cast<double>(out.per_window.size());
    return out;
}

WindowedStat wpli(std::span<const double> diff, std::size_t window, std::size_t stride) {
    check_window(diff.size(), window, stride);
    WindowedStat out;
    for (std::size_t start = 0; start + window <= diff.size(); start += stride) {
        double signed_sum = 0.0;
        double abs_sum = 0.0;
        for (std::size_t t = start; t < start + window; ++t) {
            const double im = std::sin(diff[t]);
            signed_sum += im;  // |im| * sgn(im)
            abs_sum += std::abs(im);
        }
        out.per_window.push_back(abs_sum == 0.0 ? 0.0 : std::abs(signed_sum) / abs_sum);
    }
    double sum = 0.0;
    for (double v : out.per_window) sum += v;
    out.mean = sum / static_cast<double>(out.per_window.size());
    return out;
}

double intra_agent_coupling(const SimulationRecord& record, std::size_t agent_index,
                            CouplingMeasure measure, std::size_t window, std::size_t stride,
                            std::size_t from_frame) {
    if (record.frames.empty()) throw std::invalid_argument("record has no frames");
    if (agent_index >= record.frames.front().agents.size())
        throw std::invalid_argument("agent index out of range");
    double sum = 0.0;
    for (const auto& [i, j] : kCoupledPairs) {
        const std::vector<double> diff =
            pair_difference_series(record, agent_index, i, j, from_frame);
        sum += windowed_mean(record, measure, diff, window, stride);
    }
    return sum / static_cast<double>(kCoupledPairs.size());
}

double inter_agent_coupling(const SimulationRecord& record, std::size_t window,
                            std::size_t stride, std::size_t from_frame) {
    if (record.frames.empty()) throw std::invalid_argument("record has no frames");
    const std::size_t n_agents = record.frames.front().agents.size();
    if (n_agents < 2) throw std::invalid_argument("inter-agent coupling needs >= 2 agents");

    double sum = 0.0;
    std::size_t count = 0;
    std::vector<double> diff(record.frames.size() - from_frame);
    for (std::size_t m = 0; m < n_agents; ++m) {
        for (std::size_t n = m + 1; n < n_agents; ++n) {
            for (std::size_t node = 0; node < kNodes; ++node) {
                for (std::size_t f = from_frame; f < record.frames.size(); ++f) {
                    const auto& frame = record.frames[f];
                    diff[f - from_frame] = phase_difference(frame.agents[m].phases[node],
                                                            frame.agents[n].phases[node]);
                }
                sum += wpli(diff, window, stride).mean;
                ++count;
            }
        }
    }
    return sum / static_cast<double>(count);
}

KopStats movement_alignment(const SimulationRecord& record, std::size_t from_frame) {
    if (record.frames.empty()) throw std::invalid_argument("record has no frames");
    const std::size_t n_agents = record.frames.front().agents.size();
    if (n_agents < 2) throw std::invalid_argument("movement alignment needs >= 2 agents");
    std::vector<std::vector<double>> headings(n_agents);
    for (auto& h : headings) h.reserve(record.frames.size() - from_frame);
    for (std::size_t f = from_frame; f < record.frames.size(); ++f)
        for (std::size_t i = 0; i < n_agents; ++i)
            headings[i].push_back(record.frames[f].agents[i].heading);
    return kop_series_stats(headings);
}

double performance_gradient(const SimulationRecord& record) {
    if (record.frames.empty()) throw std::invalid_argument("record has no frames");
    if (record.frames.front().agents.size() != 1)
        throw std::invalid_argument("gradient performance expects a single agent");
    if (record.config.environment.sources.size() != 1)
        throw std::invalid_argument("gradient performance expects a single source");
    const Vec2 source = record.config.environment.sources.front().position;
    const double d0 = distance(record.frames.front().agents.front().position, source);
    if (d0 == 0.0) throw std::invalid_argument("agent starts on the source");
    const double d_end = distance(record.frames.back().agents.front().position, source);
    return 1.0 - d_end / d0;
}

double performance_binary(const SimulationRecord& record) {
    if (record.frames.empty()) throw std::invalid_argument("record has no frames");
    if (record.frames.front().agents.size() != 1)
        throw std::invalid_argument("binary performance expects a single agent");
    if (record.config.environment.sources.size() != 2)
        throw std::invalid_argument("binary performance expects two sources");
    const Vec2 start = record.frames.front().agents.front().position;
    const Vec2 end = record.frames.back().agents.front().position;
    double best = 0.0;
    bool first = true;
    for (const auto& src : record.config.environment.sources) {
        const double d0 = distance(start, src.position);
        if (d0 == 0.0) throw std::invalid_argument("agent starts on a source");
        const double score = 1.0 - distance(end, src.position) / d0;
        if (first || score > best) best = score;
        first = false;
    }
    return best;
}

double performance_collective(const SimulationRecord& record, bool clamp_negative) {
    if (record.frames.empty()) throw std::invalid_argument("record has no frames");
    const std::size_t n_agents = record.frames.front().agents.size();
    if (n_agents < 2) throw std::invalid_argument("collective performance expects >= 2 agents");
    double best = 0.0;
    bool first = true;
    for (const auto& src : record.config.environment.sources) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n_agents; ++i) {
            const double d0 = distance(record.frames.front().agents[i].position, src.position);
            if (d0 == 0.0) throw std::invalid_argument("agent starts on a source");
            double term = 1.0 - distance(record.frames.back().agents[i].position, src.position) / d0;
            if (clamp_negative) term = std::max(0.0, term);
            mean += term;
        }
        mean /= static_cast<double>(n_agents);
        if (first || mean > best) best = mean;
        first = false;
    }
    return best;
}

MetricSummary summarize(const SimulationRecord& record, const MetricParams& params) {
    if (record.frames.empty()) throw std::invalid_argument("record has no frames");
    const std::size_t n_agents = record.frames.front().agents.size();

    std::size_t from_frame = 0;
    if (params.transient_s > 0.0 && record.dt_record > 0.0) {
        from_frame = static_cast<std::size_t>(std::ceil(params.transient_s / record.dt_record));
        if (from_frame >= record.frames.size())
            throw std::invalid_argument("transient removes the entire record");
    }
    const std::size_t remaining = record.frames.size() - from_frame;
    const std::size_t window = std::min(params.window, remaining);

    MetricSummary out;

    // Neural KOP statistics: per agent over its four nodes, then averaged.
    for (std::size_t i = 0; i < n_agents; ++i) {
        std::vector<std::vector<double>> nodes(kNodes);
        for (auto& n : nodes) n.reserve(remaining);
        for (std::size_t f = from_frame; f < record.frames.size(); ++f)
            for (std::size_t node = 0; node < kNodes; ++node)
                nodes[node].push_back(record.frames[f].agents[i].phases[node]);
        const KopStats stats = kop_series_stats(nodes);
        out.mean_kop += stats.mean;
        out.sd_kop += stats.sd;
    }
    out.mean_kop /= static_cast<double>(n_agents);
    out.sd_kop /= static_cast<double>(n_agents);

    for (std::size_t i = 0; i < n_agents; ++i) {
        out.mean_plv +=
            intra_agent_coupling(record, i, CouplingMeasure::Plv, window, params.stride, from_frame);
        out.plv_full += intra_agent_coupling(record, i, CouplingMeasure::Plv, remaining,
                                             params.stride, from_frame);
        out.intra_wpli += intra_agent_coupling(record, i, CouplingMeasure::Wpli, window,
                                               params.stride, from_frame);
    }
    out.mean_plv /= static_cast<double>(n_agents);
    out.plv_full /= static_cast<double>(n_agents);
    out.intra_wpli /= static_cast<double>(n_agents);

    if (n_agents >= 2) {
        out.inter_wpli = inter_agent_coupling(record, window, params.stride, from_frame);
        const KopStats movement = movement_alignment(record, from_frame);
        out.movement_mean_kop = movement.mean;
        out.movement_sd_kop = movement.sd;
    } else {
        out.inter_wpli = 0.0;
        out.movement_mean_kop = 1.0;  // a single heading is trivially aligned
        out.movement_sd_kop = 0.0;
    }

    if (n_agents == 1)
        out.performance = record.config.environment.sources.size() == 1
                              ? performance_gradient(record)
                              : performance_binary(record);
    else
        out.performance = performance_collective(record, params.clamp_collective);
    return out;
}

} // namespace hkb
