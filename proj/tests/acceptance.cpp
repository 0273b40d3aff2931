#include "qcorbit/geometry.hpp"
#include "qcorbit/realizer.hpp"
#include "qcorbit/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <tuple>

using namespace qcorbit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// Limit-set estimates gathered by criteria 5 and 6 for the structural checks.
struct Collected {
    std::string name;
    LimitSetEstimate omega;
    RingBounds rings;
};
std::vector<Collected> collected;

Outcome gamma_identity() {
    Outcome o;
    double worst_a = 0, worst_c = 0;
    for (double K : {0.25, 1.0, 4.0})
        for (double theta : {0.0, kPi / 2, 3.0})
            for (double r : {0.1, 1.0, 10.0}) {
                const MapDescriptor h = AffineStretch{K, theta};
                const PlanarPoint expect = std::sqrt(K) * unit(theta);
                worst_a = std::max(worst_a, std::abs(gamma(h, 1.0, r, RadiusMethod::Analytic) - expect));
                worst_c = std::max(worst_c, std::abs(gamma(h, 1.0, r, RadiusMethod::Contour) - expect));
            }
    o.pass = worst_a <= 1e-12 && worst_c <= 1e-4;
    o.detail = fmt("analytic err %.2e (<= 1e-12), contour err %.2e (<= 1e-4)", worst_a, worst_c);
    return o;
}

Outcome beltrami_cross_check() {
    std::mt19937 rng(20260);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double fd_err = 0, mu_max = 0;
    int spiral_over = 0, radial_over = 0;
    double spiral_ratio = 0, radial_ratio = 0;
    for (int i = 0; i < 100; ++i) {
        const double K = std::exp(std::log(4.0) * (2 * U(rng) - 1));
        const double alpha = (U(rng) < 0.5 ? -0.5 : 0.5) * spiral_alpha_max(K);
        const MapDescriptor s = Spiral{K, alpha};
        for (int j = 0; j < 8; ++j) {
            // S(tz) = t^{1+i alpha} S(z), so one scale band already contains every value of mu.
            const PlanarPoint z = std::polar(0.5 * std::pow(4.0, U(rng)), kTwoPi * U(rng));
            const PlanarPoint mu = beltrami_analytic(s, z);
            fd_err = std::max(fd_err, std::abs(wirtinger_numeric(s, z, 1e-5).mu() - mu));
            mu_max = std::max(mu_max, std::abs(mu));
        }
        const double sr = spiral_distortion_max(K, alpha) / (2 * std::max(K, 1 / K));
        spiral_ratio = std::max(spiral_ratio, sr);
        spiral_over += sr > 1;

        double L = std::exp(std::log(4.0) * (2 * U(rng) - 1));
        if (L == K) L *= 1.5;
        const double t = 0.5 * std::exp(-std::abs(std::log(L / K)));
        const MapDescriptor r = RadialStretch{K, L, t};
        for (int j = 0; j < 8; ++j) {
            const PlanarPoint z = std::polar(t * std::pow(1 / t, 0.02 + 0.96 * U(rng)), kTwoPi * U(rng));
            const PlanarPoint mu = beltrami_analytic(r, z);
            fd_err = std::max(fd_err, std::abs(wirtinger_numeric(r, z, 1e-5).mu() - mu));
            mu_max = std::max(mu_max, std::abs(mu));
        }
        const double rr = radial_distortion_max(K, L, t) / (2 * std::max({K, L, 1 / K, 1 / L}));
        radial_ratio = std::max(radial_ratio, rr);
        radial_over += rr > 1;
    }
    Outcome o;
    o.pass = fd_err <= 1e-6 && mu_max < 1 && spiral_over == 0 && radial_over == 0;
    o.detail = fmt("fd err %.2e (<= 1e-6), max|mu| %.4f (< 1), ", fd_err, mu_max) +
               fmt("spiral D/bound max %.3f over in %g/100, radial D/bound max %.3f over in %g/100", spiral_ratio,
                   spiral_over, radial_ratio, radial_over);
    return o;
}

Outcome boundary_agreement() {
    double worst = 0;
    for (auto [K, L] : {std::pair{1.0, 4.0}, std::pair{4.0, 1.0}, std::pair{2.25, 0.25}}) {
        const double t = 0.5 * std::exp(-std::abs(std::log(L / K)));
        const MapDescriptor R = RadialStretch{K, L, t};
        for (int j = 0; j < 256; ++j) {
            const PlanarPoint u = unit(kTwoPi * j / 256);
            worst = std::max(worst, std::abs(eval(R, u) - eval(AffineStretch{K, 0.0}, u)));
            worst = std::max(worst, std::abs(eval(R, t * u) - eval(AffineStretch{L, 0.0}, t * u)));
        }
    }
    return {worst <= 1e-10, fmt("sup boundary mismatch %.2e (<= 1e-10)", worst)};
}

Outcome spiral_scaling() {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const double K = std::exp(std::log(4.0) * (2 * U(rng) - 1));
        const double alpha = (2 * U(rng) - 1) * std::min(spiral_alpha_max(K), 4.0) * 0.99;
        const double t = 1e-3 + 0.999 * U(rng);
        const PlanarPoint z = std::polar(0.1 + 2 * U(rng), kTwoPi * U(rng));
        const MapDescriptor s = Spiral{K, alpha};
        worst = std::max(worst, std::abs(eval(s, t * z) - std::pow(t, PlanarPoint{1.0, alpha}) * eval(s, z)));
    }
    return {worst <= 1e-10, fmt("max |S(tz) - t^{1+i alpha} S(z)| %.2e (<= 1e-10)", worst)};
}

Outcome orbit_regressions() {
    const PointCloud grid = [] {
        PointCloud g;
        for (int i = -4; i <= 4; ++i)
            for (int j = -4; j <= 4; ++j) g.push_back({0.4 * i, 0.4 * j});
        return g;
    }();
    const std::vector<double> ts = log_spaced(1.0, 1e-6, 8);
    double power_err = 0, linear_err = 0;
    for (int d : {2, 3, 5}) {
        const DerivativeSample s = derivative_sample(Power{d}, ts, grid);
        for (const auto& level : s.values)
            for (std::size_t g = 0; g < grid.size(); ++g)
                power_err = std::max(power_err, std::abs(level[g] - std::pow(grid[g], d)));
    }
    for (PlanarPoint w : {PlanarPoint{0.0, 1.0}, PlanarPoint{-2.0, 0.5}, PlanarPoint{0.3, -0.3}}) {
        const DerivativeSample s = derivative_sample(Linear{w}, ts, grid);
        const PlanarPoint rot = unit(std::arg(w));
        for (const auto& level : s.values)
            for (std::size_t g = 0; g < grid.size(); ++g)
                linear_err = std::max(linear_err, std::abs(level[g] - rot * grid[g]));
    }
    double spiral_h = 0;
    for (PlanarPoint w : {PlanarPoint{1.0, 0.0}, PlanarPoint{0.6, 0.8}, PlanarPoint{-1.5, 0.5}}) {
        const OrbitTrace tr = trace_orbit(LogSpiral{1.0}, w, 1.0, 1e-6, 256);
        const LimitSetEstimate est = omega_limit(tr);
        PointCloud circle(20000);
        for (std::size_t j = 0; j < circle.size(); ++j) circle[j] = std::abs(w) * unit(kTwoPi * j / circle.size());
        spiral_h = std::max(spiral_h, hausdorff(est.points, circle));
        collected.push_back({"log_spiral", est, ring_bound_estimate(tr)});
    }
    Outcome o;
    o.pass = power_err <= 1e-12 && linear_err <= 1e-12 && spiral_h <= 1e-2;
    o.detail = fmt("power err %.2e, linear err %.2e (<= 1e-12), log spiral Hausdorff %.2e (<= 1e-2)", power_err,
                   linear_err, spiral_h);
    return o;
}

PointCloud arc(double r, double a, double b, int n) {
    PointCloud p;
    for (int i = 0; i <= n; ++i) p.push_back(std::polar(r, a + (b - a) * i / n));
    return p;
}

Outcome realize_targets() {
    TargetSet l_shape{arc(1.5, 0.0, kPi / 2, 32), 2.0};
    for (int i = 1; i <= 20; ++i) l_shape.polyline.push_back({0.0, 1.5 + (0.8 - 1.5) * i / 20.0});
    const std::pair<const char*, TargetSet> targets[] = {
        {"arc", {arc(1.5, 0.0, kPi, 128), 2.0}},
        {"circle", {arc(1.5, 0.0, kTwoPi, 256), 2.0}},
        {"L", l_shape},
    };
    Outcome o;
    for (const auto& [name, target] : targets) {
        const double limit = 4 * target.C * target.C;
        for (bool small : {false, true}) {
            const auto start = std::chrono::steady_clock::now();
            SynthesisOptions so;
            so.k_min = 20;
            so.k_max = 21;
            VerifyOptions vo;
            if (small) {
                so.alpha.cap = 0.05;
                so.radial.cap = 1e-4;
                vo.distortion_limit = 1.1 * target.C * target.C;
            }
            const Synthesis s = synthesize_to_depth(target, vo.depth, so);
            const VerificationReport rep = verify_realization(s.map, target, vo);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const bool ok = rep.passed && rep.hausdorff <= 0.05 && rep.breakpoint_error <= 1e-6 &&
                            rep.max_distortion <= (small ? 1.1 * target.C * target.C : limit) && secs < 60;
            o.pass = o.pass && ok;
            o.detail += std::string(o.detail.empty() ? "" : "; ") + name + (small ? "/small-alpha" : "") +
                        fmt(" H %.4f bp %.1e D %.3f %.1fs", rep.hausdorff, rep.breakpoint_error, rep.max_distortion,
                            secs);
            collected.push_back({name, rep.omega, rep.rings});
        }
    }
    return o;
}

Outcome dehn_pair() {
    const DehnSchedule s{1.0, 6, 2.0};
    const DehnPairReport rep = dehn_derivative_pair(s, dehn_default_grid(s));
    Outcome o;
    o.pass = rep.inside_monotone && rep.separated && !rep.inconclusive;
    o.detail = fmt("inside discrepancy %.3f -> %.4f, final annulus %.3f (> 10x %.4f)", rep.inside_discrepancy.front(),
                   rep.inside_discrepancy.back(), rep.annulus_discrepancy.back(), rep.inside_discrepancy.back());
    o.detail += rep.inside_monotone ? ", monotone" : ", NOT monotone";
    return o;
}

Outcome omega_structure() {
    Outcome o;
    int outside = 0, unconverged = 0;
    double worst_stab = 0;
    for (const auto& c : collected) {
        for (const auto& p : c.omega.points) {
            const double m = std::abs(p);
            outside += m < c.rings.lo - 1e-12 || m > c.rings.hi + 1e-12;
        }
        unconverged += !c.omega.converged;
        if (!c.omega.stabilization.empty())
            worst_stab = std::max(worst_stab, c.omega.stabilization.back() / c.omega.tolerance);
    }
    o.pass = !collected.empty() && outside == 0 && unconverged == 0;
    o.detail = fmt("%g estimates, points outside ring bounds %g, unconverged %g, max stabilization/tol %.3f",
                   static_cast<double>(collected.size()), outside, unconverged, worst_stab);
    return o;
}

}  // namespace

int main() {
    constexpr double none = std::numeric_limits<double>::infinity();
    // Wall-clock budgets in seconds; the realization budget is checked per target.
    const std::tuple<const char*, std::function<Outcome()>, double> criteria[] = {
        {"gamma identity for affine stretches", gamma_identity, 1.0},
        {"beltrami cross-check", beltrami_cross_check, 5.0},
        {"radial stretch boundary agreement", boundary_agreement, none},
        {"spiral scaling relation", spiral_scaling, none},
        {"built-in orbit regressions", orbit_regressions, none},
        {"end-to-end realization", realize_targets, none},
        {"dehn twist pair", dehn_pair, 10.0},
        {"omega-limit structure", omega_structure, none},
    };
    int failed = 0, index = 0;
    for (const auto& [name, run, budget] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= budget) {
            o.pass = false;
            o.detail += fmt(", over the %.0f s budget", budget);
        }
        failed += !o.pass;
        std::printf("criterion %d %s  %s  [%s] (%.2f s)\n", index, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(),
                    secs);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
