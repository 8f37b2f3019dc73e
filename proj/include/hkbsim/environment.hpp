#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hkbsim/geometry.hpp"

namespace hkb {

struct StimulusSource {
    Vec2 position;        // cm
    double quality{1.0};  // in [0, 1]; the second source carries the ratio r
};

/// How the emitted-stimulus terms of several neighbors combine into one
/// perceived concentration.
enum class SocialAggregation {
    Sum,   // plain sum over emitters
    Mean,  // sum divided by the number of emitters
};

struct EnvironmentSpec {
    std::vector<StimulusSource> sources;     // 1..2
    double lambda_env{0.02};                 // 1/cm
    double lambda_social{0.02};              // 1/cm
    double social_strength{0.0};             // S, dimensionless
    SocialAggregation social_aggregation{SocialAggregation::Mean};
    double arena_width{300.0};               // cm, rendering metadata only
    double arena_height{400.0};              // cm
};

/// Environmental concentration at a point: sum over sources of
/// quality * exp(-lambda_env * distance).
double stimulus_at(const EnvironmentSpec& env, Vec2 pos);

/// Emitted-stimulus concentration read at `from`, excluding the perceiver's
/// own emission. Emitters sit at the other agents' centers.
double social_stimulus_from(Vec2 from, std::span<const Vec2> agent_positions,
                            std::size_t perceiver_index, double strength, double lambda,
                            SocialAggregation aggregation = SocialAggregation::Sum);

/// Convenience form measuring from the perceiver's own center.
double social_stimulus(std::span<const Vec2> agent_positions, std::size_t perceiver_index,
                       double strength, double lambda,
                       SocialAggregation aggregation = SocialAggregation::Sum);

/// Total concentration at a sensor: environmental field plus social emission,
/// with social distances measured from the sensor to each emitter's center.
double perceived_stimulus(const EnvironmentSpec& env, std::span<const Vec2> agent_positions,
                          std::size_t perceiver_index, Vec2 sensor_pos);

} // namespace hkb
