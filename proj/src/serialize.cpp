#include "qcorbit/serialize.hpp"

namespace qcorbit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

double number(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_number()) throw ParseError(std::string("field \"") + name + "\" must be a number");
    return v.get<double>();
}

int integer(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_number_integer()) throw ParseError(std::string("field \"") + name + "\" must be an integer");
    return v.get<int>();
}

Json piece_to_json(const AnnulusPiece& p) {
    Json j;
    j["r_out"] = p.r_out;
    j["r_in"] = p.r_in;
    j["base_angle"] = p.base_angle;
    j["k"] = p.k;
    j["planned_start"] = point_to_json(p.planned_start);
    j["planned_end"] = point_to_json(p.planned_end);
    j["piece"] = std::visit(overloaded{[](const SpiralPiece& s) {
                                           return Json{{"type", "spiral"}, {"K", s.K}, {"alpha", s.alpha}};
                                       },
                                       [](const RadialPiece& r) {
                                           return Json{{"type", "radial"}, {"K", r.K}, {"L", r.L}, {"t", r.t}};
                                       }},
                            p.kind);
    return j;
}

AnnulusPiece piece_from_json(const Json& j) {
    AnnulusPiece p;
    p.r_out = number(j, "r_out");
    p.r_in = number(j, "r_in");
    p.base_angle = number(j, "base_angle");
    p.k = j.contains("k") ? integer(j, "k") : 0;
    if (j.contains("planned_start")) p.planned_start = point_from_json(j.at("planned_start"));
    if (j.contains("planned_end")) p.planned_end = point_from_json(j.at("planned_end"));
    const Json& piece = field(j, "piece");
    const Json& type = field(piece, "type");
    if (type == "spiral") {
        p.kind = SpiralPiece{number(piece, "K"), number(piece, "alpha")};
    } else if (type == "radial") {
        p.kind = RadialPiece{number(piece, "K"), number(piece, "L"), number(piece, "t")};
    } else {
        throw ParseError("unknown annulus piece type " + type.dump());
    }
    return p;
}

Json profile_to_json(const AngleProfile& p) {
    if (p.shape == AngleProfile::Shape::Constant) return Json{{"shape", "constant"}, {"value", p.value}};
    return Json{{"shape", "loglog_sine"}, {"center", p.center}, {"amplitude", p.amplitude}, {"frequency", p.frequency}};
}

AngleProfile profile_from_json(const Json& j) {
    AngleProfile p;
    const Json& shape = field(j, "shape");
    if (shape == "constant") {
        p.shape = AngleProfile::Shape::Constant;
        p.value = number(j, "value");
    } else if (shape == "loglog_sine") {
        p.shape = AngleProfile::Shape::LogLogSine;
        p.center = number(j, "center");
        p.amplitude = number(j, "amplitude");
        p.frequency = number(j, "frequency");
    } else {
        throw ParseError("unknown profile shape " + shape.dump());
    }
    return p;
}

}  // namespace

Json point_to_json(PlanarPoint z) { return Json::array({z.real(), z.imag()}); }

PlanarPoint point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("a point must be a two-element numeric array [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const MapDescriptor& map) {
    Json j;
    j["kind"] = kind_name(map);
    std::visit(overloaded{[&](const Linear& m) { j["w"] = point_to_json(m.w); },
                          [&](const Power& m) { j["d"] = m.d; },
                          [&](const AffineStretch& m) {
                              j["K"] = m.K;
                              j["theta"] = m.theta;
                          },
                          [&](const Spiral& m) {
                              j["K"] = m.K;
                              j["alpha"] = m.alpha;
                          },
                          [&](const LogSpiral& m) { j["alpha"] = m.alpha; },
                          [&](const RadialStretch& m) {
                              j["K"] = m.K;
                              j["L"] = m.L;
                              j["t"] = m.t;
                          },
                          [&](const DehnTwist& m) { j["sign"] = m.sign; },
                          [&](const OscillatingTwist& m) { j["profile"] = profile_to_json(m.profile); },
                          [&](const PiecewiseAnnulus& m) {
                              j["outer_fill"] = Json{{"K", m.outer_fill.K}, {"theta", m.outer_fill.theta}};
                              Json pieces = Json::array();
                              for (const auto& p : m.pieces) pieces.push_back(piece_to_json(p));
                              j["pieces"] = std::move(pieces);
                          },
                          [&](const DehnScheduleMap& m) {
                              j["n_max"] = m.n_max;
                              j["growth"] = m.growth;
                          },
                          [&](const RadialPower& m) {
                              j["d_lo"] = m.d_lo;
                              j["d_hi"] = m.d_hi;
                              j["period"] = m.period;
                          }},
               map);
    return j;
}

MapDescriptor map_from_json(const Json& j) {
    const Json& kind_field = field(j, "kind");
    if (!kind_field.is_string()) throw ParseError("field \"kind\" must be a string");
    const std::string kind = kind_field.get<std::string>();
    MapDescriptor map;
    if (kind == "linear") {
        map = Linear{point_from_json(field(j, "w"))};
    } else if (kind == "power") {
        map = Power{integer(j, "d")};
    } else if (kind == "affine_stretch") {
        map = AffineStretch{number(j, "K"), number(j, "theta")};
    } else if (kind == "spiral") {
        map = Spiral{number(j, "K"), number(j, "alpha")};
    } else if (kind == "log_spiral") {
        map = LogSpiral{number(j, "alpha")};
    } else if (kind == "radial_stretch") {
        map = RadialStretch{number(j, "K"), number(j, "L"), number(j, "t")};
    } else if (kind == "dehn_twist") {
        map = DehnTwist{integer(j, "sign")};
    } else if (kind == "oscillating_twist") {
        map = OscillatingTwist{profile_from_json(field(j, "profile"))};
    } else if (kind == "piecewise_annulus") {
        PiecewiseAnnulus m;
        const Json& fill = field(j, "outer_fill");
        m.outer_fill = AffineStretch{number(fill, "K"), number(fill, "theta")};
        const Json& pieces = field(j, "pieces");
        if (!pieces.is_array()) throw ParseError("field \"pieces\" must be an array");
        for (const auto& p : pieces) m.pieces.push_back(piece_from_json(p));
        map = std::move(m);
    } else if (kind == "dehn_schedule") {
        map = DehnScheduleMap{integer(j, "n_max"), number(j, "growth")};
    } else if (kind == "radial_power") {
        map = RadialPower{number(j, "d_lo"), number(j, "d_hi"), number(j, "period")};
    } else {
        throw ParseError("unknown map kind \"" + kind + "\"");
    }
    validate(map);
    return map;
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

}  // namespace qcorbit
