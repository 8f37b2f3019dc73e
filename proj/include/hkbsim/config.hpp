#pragma once

#include <optional>
#include <string>

#include "hkbsim/engine.hpp"
#include "hkbsim/sweeps.hpp"

namespace hkb {

/// A parsed configuration document: always a run setup, plus sweep settings
/// when a "sweep" section is present.
struct ConfigDocument {
    RunConfig run;
    std::optional<SweepSpec> sweep;
};

/// Parse a JSON configuration. Absent keys fall back to the standard
/// defaults (lambda 0.02/cm, dt 0.01 s, duration 30 s, speed 10 cm/s,
/// body radius 2.5 cm, 5 Hz oscillators, 5 cm freeze radius for groups).
/// Unknown keys and out-of-range values raise std::invalid_argument with
/// the offending JSON path.
ConfigDocument parse_config(const std::string& text);

/// Canonical JSON serialization; parse(serialize(doc)) == doc.
std::string serialize_config(const ConfigDocument& doc);

} // namespace hkb
