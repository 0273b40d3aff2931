#include "qcorbit/geometry.hpp"
#include "qcorbit/maps.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace qcorbit;

namespace {

const PlanarPoint I{0.0, 1.0};

// Independent spiral evaluation: S(z) = (K x + i y) * exp(i alpha ln|z|).
PlanarPoint spiral_oracle(double K, double alpha, PlanarPoint z) {
    return PlanarPoint{K * z.real(), z.imag()} * std::exp(I * alpha * std::log(std::abs(z)));
}

}  // namespace

TEST_CASE("affine stretch values") {
    const MapDescriptor h = AffineStretch{4.0, 0.0};
    CHECK(std::abs(eval(h, 1.0) - PlanarPoint{4.0, 0.0}) < 1e-15);
    CHECK(std::abs(eval(h, I) - I) < 1e-15);
    const MapDescriptor rotated = AffineStretch{4.0, kPi / 2};
    CHECK(std::abs(eval(rotated, 1.0) - 4.0 * I) < 1e-14);
}

TEST_CASE("radial stretch matches h_K on |z|=1 and h_L on |z|=t") {
    const RadialStretch R{1.0, 4.0, 0.125};
    CHECK(R.nu() == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    const MapDescriptor m = R;
    for (int j = 0; j < 256; ++j) {
        const PlanarPoint u = std::polar(1.0, kTwoPi * j / 256);
        CHECK(std::abs(eval(m, u) - eval(AffineStretch{1.0, 0.0}, u)) <= 1e-10);
        const PlanarPoint w = 0.125 * u;
        // K (x^2+y^2)^{nu/2} x + i y with nu = ln 4 / ln(1/8)
        const double nu = std::log(4.0) / std::log(0.125);
        const PlanarPoint oracle{std::pow(std::norm(w), nu / 2) * w.real(), w.imag()};
        CHECK(std::abs(eval(m, w) - oracle) <= 1e-14);
        CHECK(std::abs(eval(m, w) - eval(AffineStretch{4.0, 0.0}, w)) <= 1e-10);
    }
}

TEST_CASE("unit spiral at z=2 with alpha = pi/ln 2") {
    CHECK(std::abs(eval(Spiral{1.0, kPi / std::log(2.0)}, 2.0) - PlanarPoint{-2.0, 0.0}) < 1e-12);
}

TEST_CASE("spiral evaluation agrees with an independent formula") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const PlanarPoint z{U(rng), U(rng)};
        const double K = std::exp(U(rng) / 2), alpha = 0.9 * spiral_alpha_max(K) * U(rng) / 3.0;
        CHECK(std::abs(eval(Spiral{K, alpha}, z) - spiral_oracle(K, alpha, z)) <= 1e-12 * (1 + std::abs(z)));
    }
}

TEST_CASE("spiral_alpha_max") {
    CHECK(spiral_alpha_max(2.0) == doctest::Approx(4.0 / 3.0));
    CHECK(spiral_alpha_max(3.0) == doctest::Approx(0.75));
    CHECK(spiral_alpha_max(1.0) == std::numeric_limits<double>::infinity());
    CHECK(spiral_alpha_max(2.25) == doctest::Approx(4.5 / 4.0625));
    CHECK_THROWS_AS(spiral_alpha_max(0.0), DomainError);
    CHECK_THROWS_AS(spiral_alpha_max(-1.0), DomainError);
}

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(validate(Linear{{0.0, 0.0}}), DescriptorError);
    CHECK_THROWS_AS(validate(Power{0}), DescriptorError);
    CHECK_THROWS_AS(validate(AffineStretch{-1.0, 0.0}), DescriptorError);
    CHECK_THROWS_AS(validate(AffineStretch{2.0, kTwoPi}), DescriptorError);
    CHECK_THROWS_AS(validate(Spiral{2.0, 4.0 / 3.0}), DescriptorError);
    CHECK_NOTHROW(validate(Spiral{1.0, 100.0}));
    CHECK_THROWS_AS(validate(RadialStretch{1.0, 4.0, 0.25}), DescriptorError);
    CHECK_NOTHROW(validate(RadialStretch{1.0, 4.0, 0.2499}));
    CHECK_THROWS_AS(validate(DehnTwist{0}), DescriptorError);
    OscillatingTwist bad;
    bad.profile.amplitude = 2.0;
    CHECK_THROWS_AS(validate(bad), DescriptorError);
    CHECK_THROWS_AS(eval(Spiral{3.0, 1.0}, 1.0), DescriptorError);
}

TEST_CASE("power and linear at zero return zero") {
    CHECK(eval(Power{3}, 0.0) == PlanarPoint{0.0, 0.0});
    CHECK(eval(Linear{{2.0, 1.0}}, 0.0) == PlanarPoint{0.0, 0.0});
}

TEST_CASE("beltrami closed forms") {
    CHECK(std::abs(beltrami_analytic(AffineStretch{4.0, 1.3}, {0.3, 0.2}) - PlanarPoint{0.6, 0.0}) < 1e-15);
    for (double K : {0.5, 2.0, 3.0})
        CHECK(std::abs(beltrami_analytic(Spiral{K, 0.0}, {0.7, -0.4}) - PlanarPoint{(K - 1) / (K + 1), 0.0}) <
              1e-15);
    // K = 1: mu = i alpha e^{i psi} / (2 + i alpha)
    for (double alpha : {-2.0, 0.3, 5.0}) {
        const PlanarPoint z = std::polar(1.7, 0.4);
        const double psi = 2.0 * std::arg(z);
        const PlanarPoint expect = I * alpha * std::exp(I * psi) / (2.0 + I * alpha);
        CHECK(std::abs(beltrami_analytic(Spiral{1.0, alpha}, z) - expect) < 1e-14);
        CHECK(std::abs(beltrami_analytic(Spiral{1.0, alpha}, z)) ==
              doctest::Approx(std::abs(alpha) / std::sqrt(4 + alpha * alpha)));
        CHECK(std::abs(wirtinger_numeric(Spiral{1.0, alpha}, z).mu() - expect) < 1e-6);
    }
    CHECK_THROWS_AS(beltrami_analytic(Spiral{2.0, 0.5}, 0.0), DomainError);
    CHECK_THROWS_AS(beltrami_analytic(DehnTwist{1}, 1.5), CapabilityError);
}

TEST_CASE("spiral beltrami numeric vs analytic at e^{i pi/7}") {
    const MapDescriptor s = Spiral{2.0, 0.5};
    const PlanarPoint z = std::polar(1.0, kPi / 7);
    CHECK(std::abs(wirtinger_numeric(s, z, 1e-5).mu() - beltrami_analytic(s, z)) <= 1e-6);
}

TEST_CASE("wirtinger derivatives of linear and affine maps") {
    const PlanarPoint w{1.5, -0.5};
    const Wirtinger lin = wirtinger_numeric(Linear{w}, {0.3, 0.8});
    CHECK(std::abs(lin.f_z - w) < 1e-9);
    CHECK(std::abs(lin.f_zbar) < 1e-9);
    const Wirtinger aff = wirtinger_numeric(AffineStretch{4.0, 0.0}, {-0.2, 0.5});
    CHECK(std::abs(aff.f_z - 2.5) < 1e-9);
    CHECK(std::abs(aff.f_zbar - 1.5) < 1e-9);
    CHECK_THROWS_AS(wirtinger_numeric(Linear{w}, 1.0, 0.0), DomainError);
}

TEST_CASE("numeric and analytic beltrami agree on random draws per family") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double K = std::exp(std::log(4.0) * (2 * U(rng) - 1));
        const double bound = std::min(spiral_alpha_max(K), 4.0);
        const double alpha = (2 * U(rng) - 1) * 0.95 * bound;
        const PlanarPoint z = std::polar(0.2 + 3 * U(rng), kTwoPi * U(rng));
        const MapDescriptor s = Spiral{K, alpha};
        CHECK(std::abs(wirtinger_numeric(s, z).mu() - beltrami_analytic(s, z)) <= 1e-6);
        CHECK(std::abs(beltrami_analytic(s, z)) < 1.0);

        const double L = std::exp(std::log(4.0) * (2 * U(rng) - 1));
        const double t = 0.5 * std::exp(-std::abs(std::log(L / K)));
        const MapDescriptor r = RadialStretch{K, L, t};
        const PlanarPoint w = std::polar(t * 1.01 + (0.99 - t * 1.01) * U(rng), kTwoPi * U(rng));
        CHECK(std::abs(wirtinger_numeric(r, w).mu() - beltrami_analytic(r, w)) <= 1e-6);
        CHECK(std::abs(beltrami_analytic(r, w)) < 1.0);

        const MapDescriptor a = AffineStretch{K, kTwoPi * U(rng)};
        CHECK(std::abs(wirtinger_numeric(a, z).mu() - beltrami_analytic(a, z)) <= 1e-6);
        const MapDescriptor ls = LogSpiral{alpha};
        CHECK(std::abs(wirtinger_numeric(ls, z).mu() - beltrami_analytic(ls, z)) <= 1e-6);
    }
}

TEST_CASE("distortion_of") {
    CHECK(distortion_of(0.0) == 1.0);
    CHECK(distortion_of(PlanarPoint{0.0, 1.0 / 3.0}) == doctest::Approx(2.0));
    CHECK(distortion_of(0.6) == doctest::Approx(4.0));
    CHECK_THROWS_AS(distortion_of(1.0), DegenerateMapError);
    CHECK_THROWS_AS(distortion_of(PlanarPoint{0.8, 0.7}), DegenerateMapError);
}

TEST_CASE("exact distortion maxima match dense scans") {
    for (auto [K, alpha] : {std::pair{2.25, 0.3}, std::pair{1.0, 0.7}, std::pair{0.5, -0.2}}) {
        double scan = 1.0;
        for (int j = 0; j < 20000; ++j)
            scan = std::max(scan, distortion_of(beltrami_analytic(Spiral{K, alpha}, std::polar(1.0, kPi * j / 20000))));
        CHECK(spiral_distortion_max(K, alpha) >= scan - 1e-12);
        CHECK(spiral_distortion_max(K, alpha) <= scan * (1 + 1e-6));
    }
    const RadialStretch R{0.25, 2.25, 0.02};
    double scan = 1.0;
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j < 400; ++j) {
            const double r = R.t * std::pow(1.0 / R.t, i / 200.0);
            scan = std::max(scan, distortion_of(beltrami_analytic(R, std::polar(r, kPi * j / 400))));
        }
    CHECK(radial_distortion_max(R.K, R.L, R.t) >= scan - 1e-9);
    CHECK(radial_distortion_max(R.K, R.L, R.t) <= scan * (1 + 1e-3));
}

TEST_CASE("circle images") {
    const auto ellipse = circle_image(AffineStretch{4.0, 0.0}, 1.0, 64);
    for (const auto& p : ellipse) CHECK(std::pow(p.real() / 4.0, 2) + std::pow(p.imag(), 2) == doctest::Approx(1.0));
    for (const auto& p : circle_image(Linear{{1.0, 0.0}}, 2.0, 32)) CHECK(std::abs(p) == doctest::Approx(2.0));
    // S(r u) = r^{1+i alpha} S(u): the image of |z| = r is the unit image
    // scaled by r and rotated by alpha ln r.
    const double alpha = 0.6, r = 0.3;
    const auto unit_img = circle_image(Spiral{2.0, alpha}, 1.0, 64);
    const auto img = circle_image(Spiral{2.0, alpha}, r, 64);
    for (std::size_t j = 0; j < img.size(); ++j)
        CHECK(std::abs(img[j] - r * std::exp(I * alpha * std::log(r)) * unit_img[j]) < 1e-13);
    CHECK_THROWS_AS(circle_image(Linear{}, 1.0, 8), DomainError);
}

TEST_CASE("spiral scaling relation") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double K = std::exp(std::log(4.0) * (2 * U(rng) - 1));
        const double alpha = (2 * U(rng) - 1) * std::min(spiral_alpha_max(K), 3.0) * 0.99;
        const double t = U(rng) * 0.999 + 1e-3;
        const PlanarPoint z = std::polar(1.0, kTwoPi * U(rng));
        const MapDescriptor s = Spiral{K, alpha};
        CHECK(std::abs(eval(s, t * z) - std::pow(t, PlanarPoint{1.0, alpha}) * eval(s, z)) <= 1e-10);
    }
}

TEST_CASE("spiral circle images cross only beyond the admissibility bound") {
    const auto a = circle_image(Spiral{2.0, 0.6}, 1.0, 2048);
    const auto b = circle_image(Spiral{2.0, 0.6}, 1.05, 2048);
    CHECK_FALSE(curves_cross(a, b));
    bool crossed = false;
    for (double t = 1.01; t <= 1.2 && !crossed; t += 0.01) {
        // alpha = 5 is far beyond 4/3; build the map without validation.
        std::vector<PlanarPoint> p(2048), q(2048);
        for (int j = 0; j < 2048; ++j) {
            const PlanarPoint u = std::polar(1.0, kTwoPi * j / 2048);
            p[j] = spiral_oracle(2.0, 5.0, u);
            q[j] = spiral_oracle(2.0, 5.0, t * u);
        }
        crossed = curves_cross(p, q);
    }
    CHECK(crossed);
    CHECK_FALSE(curves_cross(circle_image(Linear{}, 1.0, 256), circle_image(Linear{}, 1.5, 256)));
}

TEST_CASE("piecewise annulus continuity is enforced") {
    PiecewiseAnnulus m;
    AnnulusPiece p;
    p.r_out = 1.0;
    p.r_in = std::exp(-kPi);
    p.kind = SpiralPiece{2.25, -0.5};
    p.base_angle = 0.0;
    m.pieces.push_back(p);
    m.outer_fill = AffineStretch{2.25, 0.0};
    CHECK_NOTHROW(validate(MapDescriptor{m}));
    m.outer_fill.theta = 0.5;
    CHECK_THROWS_AS(validate(MapDescriptor{m}), DescriptorError);
    m.outer_fill.theta = 0.0;
    AnnulusPiece gap = p;
    gap.r_out = 0.5 * p.r_in;
    gap.r_in = 0.1 * gap.r_out;
    m.pieces.push_back(gap);
    CHECK_THROWS_AS(validate(MapDescriptor{m}), DescriptorError);
}

TEST_CASE("dehn twist ring") {
    const MapDescriptor f = DehnTwist{1};
    for (double a : {0.0, 1.0, 2.5}) {
        CHECK(std::abs(eval(f, std::polar(1.0, a)) - std::polar(1.0, a)) < 1e-14);
        CHECK(std::abs(eval(f, std::polar(2.0, a)) - std::polar(2.0, a)) < 1e-13);
        CHECK(std::abs(eval(f, std::polar(1.5, a)) + std::polar(1.5, a)) < 1e-13);
    }
    CHECK(eval(f, 0.5) == PlanarPoint{0.5, 0.0});
}

TEST_CASE("oscillating twist preserves circles and fixes the positive axis") {
    const MapDescriptor f = OscillatingTwist{};
    for (double r : {0.5, 1e-3, 1e-40}) {
        CHECK(eval(f, r) == PlanarPoint{r, 0.0});
        const PlanarPoint w = eval(f, -r);
        CHECK(std::abs(w) == doctest::Approx(r));
        const double ang = std::arg(w) < 0 ? std::arg(w) + kTwoPi : std::arg(w);
        CHECK(ang >= kPi / 2 - 1e-12);
        CHECK(ang <= 3 * kPi / 2 + 1e-12);
    }
}
