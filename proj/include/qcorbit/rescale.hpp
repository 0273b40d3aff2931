#pragma once

// Mean radius rho_f, the rescaled maps f_t(x) = (f(x0 + t x) - f(x0)) / rho_f(t),
// orbit curves gamma_x(t) = f_t(x) and estimates of their omega-limit sets.

#include "qcorbit/kernels.hpp"
#include "qcorbit/maps.hpp"

#include <string>
#include <vector>

namespace qcorbit {

enum class RadiusMethod { Auto, Analytic, Contour, Raster };

std::string to_string(RadiusMethod method);
RadiusMethod radius_method_from_string(const std::string& name);

struct RadiusOptions {
    int contour_samples = 4096;
    kernels::RasterOptions raster;
    PlanarPoint center{0.0, 0.0};  // x0
};

struct MeanRadius {
    double value = 0.0;
    RadiusMethod backend = RadiusMethod::Analytic;
};

/// True when rho_f has a closed form for this map around `center`.
bool has_analytic_radius(const MapDescriptor& map, PlanarPoint center = {});

/// rho_f(r) = sqrt(area(f(B(x0, r))) / pi). Auto picks analytic, then
/// contour (injective maps), then raster; the backend used is returned.
MeanRadius mean_radius(const MapDescriptor& map, double r, RadiusMethod method = RadiusMethod::Auto,
                       const RadiusOptions& options = {});

/// f_t(x) around x0.
PlanarPoint rescaled_eval(const MapDescriptor& map, double t, PlanarPoint x, PlanarPoint x0 = {},
                          RadiusMethod method = RadiusMethod::Auto);

/// gamma_x(t) = f_t(x) with x0 = 0.
PlanarPoint gamma(const MapDescriptor& map, PlanarPoint x, double t, RadiusMethod method = RadiusMethod::Auto);

/// Log-spaced values from hi down to lo, both included, at least per_decade per decade.
std::vector<double> log_spaced(double hi, double lo, int per_decade);

struct TraceSample {
    double t;
    PlanarPoint value;
};

struct OrbitTrace {
    PlanarPoint x{1.0, 0.0};
    std::vector<TraceSample> samples;  // t strictly decreasing
    double t_hi = 1.0;
    double t_lo = 1e-6;
    int samples_per_decade = 64;
    RadiusMethod backend = RadiusMethod::Analytic;

    PointCloud values() const;
};

OrbitTrace trace_orbit(const MapDescriptor& map, PlanarPoint x, double t_hi, double t_lo, int samples_per_decade = 64,
                       RadiusMethod method = RadiusMethod::Auto, const RadiusOptions& options = {});

struct LimitSetEstimate {
    PointCloud points;                  // deepest tail
    std::vector<double> tail_depths;    // thresholds, decreasing
    std::vector<double> stabilization;  // Hausdorff between successive tails
    double tolerance = 0.0;
    bool converged = false;
};

/// Decade thresholds t_hi/10, t_hi/100, ... down to sqrt(t_hi t_lo).
std::vector<double> default_tail_levels(const OrbitTrace& trace);

/// Tail at level s is {gamma(t) : t <= s}. The estimate is the deepest tail;
/// it is converged when the last stabilization value is within twice the
/// largest sampling gap of that tail. Empty `tail_levels` selects the defaults.
LimitSetEstimate omega_limit(const OrbitTrace& trace, std::vector<double> tail_levels = {});

struct DerivativeSample {
    std::vector<double> t_sequence;
    PointCloud grid;
    std::vector<PointCloud> values;    // values[k][g] = f_{t_k}(grid[g])
    std::vector<double> sup_distance;  // sup_g |values[k+1][g] - values[k][g]|
    double tolerance = 0.0;
    bool converged = false;
};

DerivativeSample derivative_sample(const MapDescriptor& map, const std::vector<double>& t_sequence,
                                   const PointCloud& grid, double tolerance = 1e-9,
                                   RadiusMethod method = RadiusMethod::Auto);

struct RingBounds {
    double lo = 0.0;
    double hi = 0.0;
};

/// min and max of |gamma| over the trace.
RingBounds ring_bound_estimate(const OrbitTrace& trace);

}  // namespace qcorbit
