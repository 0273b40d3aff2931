#include "qcorbit/realizer.hpp"
#include "qcorbit/serialize.hpp"

#include <doctest.h>

using namespace qcorbit;

TEST_CASE("descriptor round trip") {
    const std::vector<MapDescriptor> maps{Linear{{0.0, 2.0}},
                                          Power{3},
                                          AffineStretch{4.0, 1.0},
                                          Spiral{2.0, 0.5},
                                          LogSpiral{1.0},
                                          RadialStretch{1.0, 4.0, 0.125},
                                          DehnTwist{-1},
                                          OscillatingTwist{},
                                          OscillatingTwist{AngleProfile{AngleProfile::Shape::Constant}},
                                          DehnScheduleMap{4, 3.0},
                                          RadialPower{1.0, 2.0, 2.0}};
    for (const auto& m : maps) {
        const Json j = to_json(m);
        const MapDescriptor back = map_from_json(parse_json_text(j.dump()));
        CHECK(to_json(back).dump() == j.dump());
        CHECK(kind_name(back) == kind_name(m));
        CHECK(eval(back, {0.3, -0.7}) == eval(m, {0.3, -0.7}));
    }
}

TEST_CASE("piecewise annulus round trip is bit exact") {
    const TargetSet target{{{1.5, 0.0}, std::polar(1.5, 1.0), std::polar(1.5, 2.0), std::polar(1.0, 2.0)}, 2.0};
    SynthesisOptions o;
    o.k_min = 2;
    o.k_max = 3;
    const Synthesis s = synthesize(target, o);
    const Json j = to_json(s.map);
    CHECK(j["kind"] == "piecewise_annulus");
    const MapDescriptor back = map_from_json(parse_json_text(j.dump()));
    CHECK(to_json(back).dump() == j.dump());
    const MapDescriptor orig = s.map;
    for (double r : {0.9, 1e-2, 1e-5}) CHECK(eval(back, std::polar(r, 0.4)) == eval(orig, std::polar(r, 0.4)));
}

TEST_CASE("schema errors") {
    CHECK_THROWS_AS(parse_json_text("{\"kind\": \"linear\", "), ParseError);
    try {
        parse_json_text("{\"kind\" 1}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
    CHECK_THROWS_AS(map_from_json(parse_json_text(R"({"kind": "warp"})")), ParseError);
    CHECK_THROWS_AS(map_from_json(parse_json_text(R"({"kind": "power"})")), ParseError);
    CHECK_THROWS_AS(map_from_json(parse_json_text(R"({"kind": "power", "d": 1.5})")), ParseError);
    CHECK_THROWS_AS(map_from_json(parse_json_text(R"({"kind": "linear", "w": [1]})")), ParseError);
    CHECK_THROWS_AS(map_from_json(parse_json_text(R"({"kind": "spiral", "K": 2, "alpha": 3})")), DescriptorError);
}
