#include "qcorbit/rescale.hpp"

#include "qcorbit/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace qcorbit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_affine(const MapDescriptor& map) {
    return std::holds_alternative<Linear>(map) || std::holds_alternative<AffineStretch>(map);
}

double analytic_radius(const MapDescriptor& map, double r) {
    return std::visit(
        overloaded{[&](const Linear& m) { return std::abs(m.w) * r; },
                   [&](const Power& m) { return std::pow(r, m.d); },
                   [&](const AffineStretch& m) { return std::sqrt(m.K) * r; },
                   [&](const Spiral& m) { return std::sqrt(m.K) * r; },
                   [&](const LogSpiral&) { return r; },
                   [&](const RadialStretch& m) {
                       if (r > 1.0) return std::sqrt(m.K) * r;
                       if (r < m.t) return std::sqrt(m.L) * r;
                       return std::sqrt(m.K * std::pow(r, m.nu())) * r;
                   },
                   // Circle-preserving maps send B(0, r) onto itself.
                   [&](const DehnTwist&) { return r; }, [&](const OscillatingTwist&) { return r; },
                   [&](const DehnScheduleMap&) { return r; },
                   [&](const PiecewiseAnnulus& m) {
                       // Each circle goes to a centred ellipse with semi-axes K_eff r and r.
                       if (m.pieces.empty() || r > m.pieces.front().r_out) return std::sqrt(m.outer_fill.K) * r;
                       if (r < m.pieces.back().r_in) return std::sqrt(m.pieces.back().inner_stretch()) * r;
                       auto it = std::partition_point(m.pieces.begin(), m.pieces.end(),
                                                      [r](const AnnulusPiece& p) { return p.r_in > r; });
                       return std::sqrt(it->stretch_at(r)) * r;
                   },
                   [&](const RadialPower& m) { return m.radius(r); }},
        map);
}

double contour_radius(const MapDescriptor& map, double r, const RadiusOptions& options) {
    if (options.contour_samples < 16) throw DomainError("contour method needs at least 16 samples");
    std::vector<PlanarPoint> polygon(static_cast<std::size_t>(options.contour_samples));
    for (std::size_t j = 0; j < polygon.size(); ++j)
        polygon[j] = eval_unchecked(map, options.center + std::polar(r, kTwoPi * double(j) / double(polygon.size())));
    return std::sqrt(enclosed_area(polygon) / kPi);
}

void check_trace(const OrbitTrace& trace) {
    if (trace.samples.empty()) throw DomainError("trace has no samples");
}

}  // namespace

std::string to_string(RadiusMethod method) {
    switch (method) {
        case RadiusMethod::Auto: return "auto";
        case RadiusMethod::Analytic: return "analytic";
        case RadiusMethod::Contour: return "contour";
        case RadiusMethod::Raster: return "raster";
    }
    return "auto";
}

RadiusMethod radius_method_from_string(const std::string& name) {
    if (name == "auto") return RadiusMethod::Auto;
    if (name == "analytic") return RadiusMethod::Analytic;
    if (name == "contour") return RadiusMethod::Contour;
    if (name == "raster") return RadiusMethod::Raster;
    throw DomainError("unknown mean-radius method \"" + name + "\"");
}

bool has_analytic_radius(const MapDescriptor& map, PlanarPoint center) {
    return center == PlanarPoint{0.0, 0.0} || is_affine(map);
}

MeanRadius mean_radius(const MapDescriptor& map, double r, RadiusMethod method, const RadiusOptions& options) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("mean_radius: r must be positive");
    validate(map);
    if (method == RadiusMethod::Auto) {
        if (has_analytic_radius(map, options.center))
            method = RadiusMethod::Analytic;
        else if (is_injective(map))
            method = RadiusMethod::Contour;
        else
            method = RadiusMethod::Raster;
    }
    MeanRadius out{0.0, method};
    switch (method) {
        case RadiusMethod::Analytic:
            if (!has_analytic_radius(map, options.center))
                throw CapabilityError("mean_radius: no closed form for " + kind_name(map) + " off the origin");
            out.value = analytic_radius(map, r);
            break;
        case RadiusMethod::Contour:
            if (!is_injective(map))
                throw CapabilityError("mean_radius: contour method needs an injective map; " + kind_name(map) +
                                      " is not, use the raster method");
            out.value = contour_radius(map, r, options);
            break;
        case RadiusMethod::Raster:
            out.value = std::sqrt(kernels::raster_image_area(map, options.center, r, options.raster) / kPi);
            break;
        case RadiusMethod::Auto: break;
    }
    if (!(out.value > 0.0)) throw DegenerateMapError("mean_radius: image of the disk has zero area");
    return out;
}

PlanarPoint rescaled_eval(const MapDescriptor& map, double t, PlanarPoint x, PlanarPoint x0, RadiusMethod method) {
    if (!(t > 0.0)) throw DomainError("rescaled_eval: t must be positive");
    RadiusOptions options;
    options.center = x0;
    const double rho = mean_radius(map, t, method, options).value;
    return (eval_unchecked(map, x0 + t * x) - eval_unchecked(map, x0)) / rho;
}

PlanarPoint gamma(const MapDescriptor& map, PlanarPoint x, double t, RadiusMethod method) {
    return rescaled_eval(map, t, x, {}, method);
}

std::vector<double> log_spaced(double hi, double lo, int per_decade) {
    if (!(lo > 0.0) || !(lo < hi)) throw DomainError("log_spaced: need 0 < lo < hi");
    if (per_decade < 1) throw DomainError("log_spaced: per_decade must be positive");
    const double decades = std::log10(hi / lo);
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(decades * per_decade - 1e-9)));
    std::vector<double> t(n + 1);
    const double a = std::log(hi), b = std::log(lo);
    for (std::size_t i = 0; i <= n; ++i) t[i] = std::exp(a + (b - a) * double(i) / double(n));
    t.front() = hi;
    t.back() = lo;
    return t;
}

PointCloud OrbitTrace::values() const {
    PointCloud out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.value);
    return out;
}

OrbitTrace trace_orbit(const MapDescriptor& map, PlanarPoint x, double t_hi, double t_lo, int samples_per_decade,
                       RadiusMethod method, const RadiusOptions& options) {
    if (samples_per_decade < 8) throw DomainError("trace_orbit: samples_per_decade must be at least 8");
    validate(map);
    OrbitTrace trace;
    trace.x = x;
    trace.t_hi = t_hi;
    trace.t_lo = t_lo;
    trace.samples_per_decade = samples_per_decade;
    const std::vector<double> ts = log_spaced(t_hi, t_lo, samples_per_decade);
    trace.backend = mean_radius(map, t_hi, method, options).backend;
    trace.samples.resize(ts.size());
    const PlanarPoint f0 = eval_unchecked(map, options.center);
    kernels::for_each_index(ts.size(), [&](std::size_t i) {
        const double t = ts[i];
        const double rho = mean_radius(map, t, trace.backend, options).value;
        trace.samples[i] = {t, (eval_unchecked(map, options.center + t * x) - f0) / rho};
    });
    for (const auto& s : trace.samples)
        if (!is_finite(s.value)) throw DegenerateMapError("trace_orbit: non-finite orbit value");
    return trace;
}

std::vector<double> default_tail_levels(const OrbitTrace& trace) {
    check_trace(trace);
    const double hi = trace.samples.front().t, lo = trace.samples.back().t;
    const double mid = std::sqrt(hi * lo);
    std::vector<double> levels;
    for (double s = hi / 10.0; s >= mid * (1.0 - 1e-12); s /= 10.0) levels.push_back(s);
    if (levels.size() < 2) levels = {hi * std::pow(lo / hi, 0.25), mid};
    return levels;
}

LimitSetEstimate omega_limit(const OrbitTrace& trace, std::vector<double> tail_levels) {
    check_trace(trace);
    if (tail_levels.empty()) tail_levels = default_tail_levels(trace);
    std::sort(tail_levels.begin(), tail_levels.end(), std::greater<>());
    const double deepest_t = trace.samples.back().t;
    if (!(deepest_t < tail_levels.back()))
        throw InsufficientDepthError("omega_limit: trace does not extend below the smallest tail level");

    const auto tail = [&](double level) {
        PointCloud cloud;
        for (const auto& s : trace.samples)
            if (s.t <= level) cloud.push_back(s.value);
        if (cloud.empty()) throw InsufficientDepthError("omega_limit: empty tail");
        return cloud;
    };

    LimitSetEstimate est;
    est.tail_depths = tail_levels;
    PointCloud previous = tail(tail_levels.front());
    for (std::size_t i = 1; i < tail_levels.size(); ++i) {
        PointCloud current = tail(tail_levels[i]);
        est.stabilization.push_back(hausdorff(previous, current));
        previous = std::move(current);
    }
    est.points = std::move(previous);
    est.tolerance = std::max(2.0 * max_gap(est.points), 1e-12);
    est.converged = !est.stabilization.empty() && est.stabilization.back() <= est.tolerance;
    return est;
}

DerivativeSample derivative_sample(const MapDescriptor& map, const std::vector<double>& t_sequence,
                                   const PointCloud& grid, double tolerance, RadiusMethod method) {
    if (t_sequence.empty()) throw DomainError("derivative_sample: empty t sequence");
    for (std::size_t k = 0; k < t_sequence.size(); ++k) {
        if (!(t_sequence[k] > 0.0)) throw DomainError("derivative_sample: t values must be positive");
        if (k > 0 && !(t_sequence[k] < t_sequence[k - 1]))
            throw DomainError("derivative_sample: t sequence must be strictly decreasing");
    }
    if (grid.empty()) throw DomainError("derivative_sample: empty grid");
    validate(map);

    DerivativeSample out;
    out.t_sequence = t_sequence;
    out.grid = grid;
    out.tolerance = tolerance;
    out.values.resize(t_sequence.size());
    const PlanarPoint f0 = eval_unchecked(map, {});
    for (std::size_t k = 0; k < t_sequence.size(); ++k) {
        const double t = t_sequence[k];
        const double rho = mean_radius(map, t, method).value;
        auto& level = out.values[k];
        level.resize(grid.size());
        kernels::for_each_index(grid.size(), [&](std::size_t g) {
            level[g] = (eval_unchecked(map, t * grid[g]) - f0) / rho;
        });
        for (const auto& v : level)
            if (!is_finite(v)) throw DegenerateMapError("derivative_sample: non-finite value");
    }
    for (std::size_t k = 0; k + 1 < out.values.size(); ++k) {
        double sup = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g)
            sup = std::max(sup, std::abs(out.values[k + 1][g] - out.values[k][g]));
        out.sup_distance.push_back(sup);
    }
    out.converged = !out.sup_distance.empty() && out.sup_distance.back() <= tolerance;
    return out;
}

RingBounds ring_bound_estimate(const OrbitTrace& trace) {
    check_trace(trace);
    RingBounds b{std::abs(trace.samples.front().value), std::abs(trace.samples.front().value)};
    for (const auto& s : trace.samples) {
        b.lo = std::min(b.lo, std::abs(s.value));
        b.hi = std::max(b.hi, std::abs(s.value));
    }
    return b;
}

}  // namespace qcorbit
