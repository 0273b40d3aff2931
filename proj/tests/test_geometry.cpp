#include "qcorbit/geometry.hpp"
#include "qcorbit/maps.hpp"

#include <doctest.h>

#include <cmath>

using namespace qcorbit;

TEST_CASE("enclosed area") {
    std::vector<PlanarPoint> circle(4096);
    for (std::size_t j = 0; j < circle.size(); ++j) circle[j] = std::polar(1.0, kTwoPi * j / circle.size());
    CHECK(std::abs(enclosed_area(circle) - kPi) <= 1e-5);
    CHECK(std::abs(enclosed_area(circle_image(AffineStretch{4.0, 2.0}, 1.0, 4096)) - 4.0 * kPi) <= 1e-4);
    const std::vector<PlanarPoint> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    CHECK(enclosed_area(square) == doctest::Approx(4.0));
    const std::vector<PlanarPoint> two{{0, 0}, {1, 1}};
    CHECK_THROWS_AS(enclosed_area(two), DomainError);
    // Far from the origin the shoelace stays accurate.
    std::vector<PlanarPoint> shifted = circle;
    for (auto& z : shifted) z += PlanarPoint{1e6, -1e6};
    CHECK(std::abs(enclosed_area(shifted) - enclosed_area(circle)) < 1e-6);
}

TEST_CASE("hausdorff distance") {
    const std::vector<PlanarPoint> a{{0, 0}}, b{{3, 4}};
    CHECK(hausdorff(a, b) == doctest::Approx(5.0));
    CHECK(hausdorff(b, b) == 0.0);
    const std::vector<PlanarPoint> empty;
    CHECK_THROWS_AS(hausdorff(a, empty), DomainError);
    // Dense circle samples vs a finer parametrization: within the chord gap.
    std::vector<PlanarPoint> coarse(500), fine(50000);
    for (std::size_t j = 0; j < coarse.size(); ++j) coarse[j] = std::polar(1.0, kTwoPi * j / coarse.size());
    for (std::size_t j = 0; j < fine.size(); ++j) fine[j] = std::polar(1.0, kTwoPi * j / fine.size());
    CHECK(hausdorff(coarse, fine) <= 2.0 * std::sin(kPi / coarse.size()));
}

TEST_CASE("densify and segment distance") {
    const std::vector<PlanarPoint> line{{0, 0}, {1, 0}, {1, 1}};
    const auto d = densify(line, 0.1);
    CHECK(max_gap(d) <= 0.1 + 1e-15);
    CHECK(d.front() == line.front());
    CHECK(d.back() == line.back());
    CHECK(segment_distance({0.5, 1.0}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(segment_distance({2.0, 0.0}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(segment_distance({2.0, 0.0}, {1, 1}, {1, 1}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("curves cross") {
    const std::vector<PlanarPoint> sq1{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    const std::vector<PlanarPoint> sq2{{1, 1}, {3, 1}, {3, 3}, {1, 3}};
    const std::vector<PlanarPoint> inner{{0.5, 0.5}, {1, 0.5}, {1, 1}};
    CHECK(curves_cross(sq1, sq2));
    CHECK_FALSE(curves_cross(sq1, inner));
}
