#include "qcorbit/scenarios.hpp"

#include "qcorbit/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace qcorbit {

namespace {

PointCloud arc_samples(double radius, double theta_lo, double theta_hi, double spacing) {
    const auto n = static_cast<int>(std::max(1.0, std::ceil(radius * (theta_hi - theta_lo) / spacing)));
    PointCloud out;
    for (int j = 0; j <= n; ++j) out.push_back(std::polar(radius, theta_lo + (theta_hi - theta_lo) * j / n));
    return out;
}

}  // namespace

void validate(const DehnSchedule& schedule) {
    if (!(schedule.R > 0.0) || !std::isfinite(schedule.R)) throw DomainError("dehn schedule: R must be positive");
    if (schedule.n_max < 1) throw DomainError("dehn schedule: n_max must be at least 1");
    if (!(schedule.growth > 1.0) || !std::isfinite(schedule.growth))
        throw DomainError("dehn schedule: growth must exceed 1");
}

DehnRadii schedule_radii(const DehnSchedule& schedule) {
    validate(schedule);
    return dehn_radii(DehnScheduleMap{schedule.n_max, schedule.growth});
}

MapDescriptor dehn_twist_map(const DehnSchedule& schedule) {
    validate(schedule);
    return DehnScheduleMap{schedule.n_max, schedule.growth};
}

PointCloud polar_grid(double r_min, double r_max, int n_radii, int n_angles) {
    if (!(r_min > 0.0) || !(r_min < r_max)) throw DomainError("polar_grid: need 0 < r_min < r_max");
    if (n_radii < 2 || n_angles < 1) throw DomainError("polar_grid: need at least 2 radii and 1 angle");
    PointCloud grid;
    grid.reserve(static_cast<std::size_t>(n_radii) * n_angles);
    for (int i = 0; i < n_radii; ++i) {
        const double r = r_min * std::pow(r_max / r_min, double(i) / (n_radii - 1));
        for (int j = 0; j < n_angles; ++j) grid.push_back(std::polar(r, kTwoPi * (j + 0.5) / n_angles));
    }
    return grid;
}

PointCloud dehn_default_grid(const DehnSchedule& schedule) {
    validate(schedule);
    PointCloud grid = polar_grid(1e-3 * schedule.R, 1.99 * schedule.R, 161, 64);
    std::erase_if(grid, [&](PlanarPoint z) { return std::abs(std::abs(z) - schedule.R) < 1e-12 * schedule.R; });
    return grid;
}

DehnPairReport dehn_derivative_pair(const DehnSchedule& schedule, const PointCloud& grid, double tolerance) {
    validate(schedule);
    if (grid.empty()) throw DomainError("dehn_derivative_pair: empty grid");
    const DehnRadii radii = schedule_radii(schedule);
    const MapDescriptor map = dehn_twist_map(schedule);

    std::vector<double> delta, epsilon;
    DehnPairReport rep;
    for (int n = 1; n <= schedule.n_max; ++n) {
        rep.n.push_back(n);
        delta.push_back(radii.r[n - 1] / schedule.R);
        epsilon.push_back(radii.t[n - 1] / schedule.R);
    }
    rep.delta = derivative_sample(map, delta, grid, tolerance);
    rep.epsilon = derivative_sample(map, epsilon, grid, tolerance);

    for (std::size_t k = 0; k < rep.n.size(); ++k) {
        double inside = 0.0, annulus = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const double r = std::abs(grid[g]);
            const double d = std::abs(rep.delta.values[k][g] - rep.epsilon.values[k][g]);
            if (r < schedule.R)
                inside = std::max(inside, d);
            else if (r > schedule.R && r < 2.0 * schedule.R)
                annulus = std::max(annulus, d);
        }
        rep.inside_discrepancy.push_back(inside);
        rep.annulus_discrepancy.push_back(annulus);
    }
    rep.inconclusive = schedule.n_max < 3;
    rep.inside_monotone = std::is_sorted(rep.inside_discrepancy.rbegin(), rep.inside_discrepancy.rend());
    rep.separated = rep.annulus_discrepancy.back() > 10.0 * rep.inside_discrepancy.back();
    return rep;
}

AngleProfile default_oscillation_profile() { return AngleProfile{}; }

MapDescriptor oscillating_map(const AngleProfile& profile) {
    MapDescriptor map = OscillatingTwist{profile};
    try {
        validate(map);
    } catch (const DescriptorError& e) {
        throw DomainError(e.what());
    }
    return map;
}

OscillationRun oscillation_experiment(const AngleProfile& profile, double x, double t_lo, int samples_per_decade) {
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("oscillation_experiment: x must be a nonzero real");
    if (!(t_lo > 0.0) || !(t_lo < std::exp(-3.0))) throw DomainError("oscillation_experiment: t_lo too large");
    const MapDescriptor map = oscillating_map(profile);

    OscillationRun run;
    run.trace = trace_orbit(map, {x, 0.0}, 1.0, t_lo, samples_per_decade);

    // One period of the profile spans a factor e^{2 pi / frequency} in ln(1/t).
    const double period = profile.shape == AngleProfile::Shape::LogLogSine ? kTwoPi / profile.frequency : 1.0;
    const double depth = std::log(1.0 / t_lo);
    std::vector<double> levels;
    for (int j = 3; j >= 1; --j) {
        const double ln_inv = depth * std::exp(-j * period);
        if (ln_inv > 1.0) levels.push_back(std::exp(-ln_inv));
    }
    if (levels.size() < 2) levels.clear();
    run.omega = omega_limit(run.trace, levels);

    if (x > 0.0)
        run.expected = {PlanarPoint{x, 0.0}};
    else if (profile.lower_bound() == profile.upper_bound())
        run.expected = {std::polar(-x, profile.lower_bound())};
    else
        run.expected = arc_samples(-x, profile.lower_bound(), profile.upper_bound(), 1e-3);
    run.hausdorff = hausdorff(run.omega.points, run.expected);
    return run;
}

std::vector<CatalogEntry> builtin_catalog() {
    std::vector<CatalogEntry> out;
    out.push_back({"linear", Linear{{0.0, 1.0}}, {1.0, 0.0}, "point e^{i arg w} x", {{0.0, 1.0}}, 1.0, 1e-6, false});
    out.push_back({"power", Power{3}, {1.0, 0.0}, "point x^d", {{1.0, 0.0}}, 1.0, 1e-6, false});
    out.push_back({"log_spiral", LogSpiral{1.0}, {1.0, 0.0}, "circle of radius |x|",
                   arc_samples(1.0, 0.0, kTwoPi, 1e-3), 1.0, 1e-6, false});
    // Orbit of 2 under the radial surrogate: ratios rho(2t)/rho(t) sweep
    // [2^{d_lo}, 2^{d_hi}] on the positive axis.
    const RadialPower surrogate{1.0, 2.0, 2.0};
    PointCloud segment;
    for (int j = 0; j <= 2000; ++j)
        segment.push_back({std::pow(2.0, surrogate.d_lo + (surrogate.d_hi - surrogate.d_lo) * j / 2000.0), 0.0});
    out.push_back({"radial_power", surrogate, {2.0, 0.0}, "radial segment [2^{d_lo}, 2^{d_hi}] x/|x|", segment, 1.0,
                   1e-12, true});
    return out;
}

}  // namespace qcorbit
