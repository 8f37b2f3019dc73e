#include "hkbsim/environment.hpp"

#include <algorithm>
#include <cmath>

namespace hkb {

double stimulus_at(const EnvironmentSpec& env, Vec2 pos) {
    double total = 0.0;
    for (const auto& src : env.sources)
        total += src.quality * std::exp(-env.lambda_env * distance(pos, src.position));
    return total;
}

double social_stimulus_from(Vec2 from, std::span<const Vec2> agent_positions,
                            std::size_t perceiver_index, double strength, double lambda,
                            SocialAggregation aggregation) {
    if (agent_positions.size() < 2 || strength == 0.0) return 0.0;

    // Summed in sorted order so that relabeling agents is bit-exact.
    std::vector<double> terms;
    terms.reserve(agent_positions.size() - 1);
    for (std::size_t j = 0; j < agent_positions.size(); ++j) {
        if (j == perceiver_index) continue;
        terms.push_back(std::exp(-lambda * distance(from, agent_positions[j])));
    }
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    if (aggregation == SocialAggregation::Mean) sum /= static_cast<double>(terms.size());
    return strength * sum;
}

double social_stimulus(std::span<const Vec2> agent_positions, std::size_t perceiver_index,
                       double strength, double lambda, SocialAggregation aggregation) {
    return social_stimulus_from(agent_positions[perceiver_index], agent_positions,
                                perceiver_index, strength, lambda, aggregation);
}

double perceived_stimulus(const EnvironmentSpec& env, std::span<const Vec2> agent_positions,
                          std::size_t perceiver_index, Vec2 sensor_pos) {
    return stimulus_at(env, sensor_pos) +
           social_stimulus_from(sensor_pos, agent_positions, perceiver_index,
                                env.social_strength, env.lambda_social,
                                env.social_aggregation);
}

} // namespace hkb
