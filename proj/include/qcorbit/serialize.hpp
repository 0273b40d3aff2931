#pragma once

// JSON form of map descriptors. Every descriptor is an object with a
// "kind" tag; points are two-element arrays [re, im].
//
//   {"kind": "linear", "w": [re, im]}
//   {"kind": "power", "d": 3}
//   {"kind": "affine_stretch", "K": 4, "theta": 0}
//   {"kind": "spiral", "K": 2, "alpha": 0.5}
//   {"kind": "log_spiral", "alpha": 1}
//   {"kind": "radial_stretch", "K": 1, "L": 4, "t": 0.125}
//   {"kind": "dehn_twist", "sign": 1}
//   {"kind": "oscillating_twist",
//    "profile": {"shape": "loglog_sine", "center": .., "amplitude": .., "frequency": ..}
//             | {"shape": "constant", "value": ..}}
//   {"kind": "piecewise_annulus", "outer_fill": {"K": .., "theta": ..},
//    "pieces": [{"r_out": .., "r_in": .., "base_angle": .., "k": ..,
//                "planned_start": [..], "planned_end": [..],
//                "piece": {"type": "spiral", "K": .., "alpha": ..}
//                       | {"type": "radial", "K": .., "L": .., "t": ..}}, ...]}
//   {"kind": "dehn_schedule", "n_max": 6, "growth": 2}
//   {"kind": "radial_power", "d_lo": 1, "d_hi": 2, "period": 2}

#include "qcorbit/maps.hpp"

#include <json.hpp>

#include <string>

namespace qcorbit {

using Json = nlohmann::ordered_json;

Json point_to_json(PlanarPoint z);
PlanarPoint point_from_json(const Json& j);

Json to_json(const MapDescriptor& map);

/// Parses and validates a descriptor; throws ParseError on schema problems
/// and DescriptorError on invariant violations.
MapDescriptor map_from_json(const Json& j);

/// Parses JSON text; syntax errors become ParseError carrying the byte
/// position.
Json parse_json_text(const std::string& text);

}  // namespace qcorbit
