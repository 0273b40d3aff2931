#pragma once

// Reproducible experiments: the Dehn-twist map with two distinct generalized
// derivatives at 0, the oscillating twist whose orbit of -1 is a semicircle,
// and a catalog of maps with closed-form orbits.

#include "qcorbit/maps.hpp"
#include "qcorbit/rescale.hpp"

#include <string>
#include <vector>

namespace qcorbit {

struct DehnSchedule {
    double R = 1.0;
    int n_max = 6;
    double growth = 2.0;  // r_n / s_n = t_n / u_n = growth^n
};

/// Throws DomainError unless R > 0, n_max >= 1 and growth > 1.
void validate(const DehnSchedule& schedule);

DehnRadii schedule_radii(const DehnSchedule& schedule);

MapDescriptor dehn_twist_map(const DehnSchedule& schedule);

/// Polar grid on r_min <= |z| <= r_max, radii geometric, angles offset by
/// half a step.
PointCloud polar_grid(double r_min, double r_max, int n_radii, int n_angles);

/// Default grid for the Dehn experiment: 1e-3 R <= |z| <= 1.99 R with no
/// radius equal to R.
PointCloud dehn_default_grid(const DehnSchedule& schedule);

struct DehnPairReport {
    DerivativeSample delta;    // t = delta_n = r_n / R
    DerivativeSample epsilon;  // t = epsilon_n = t_n / R
    std::vector<int> n;
    std::vector<double> inside_discrepancy;   // sup over |z| < R of |f_delta - f_eps|
    std::vector<double> annulus_discrepancy;  // sup over R < |z| < 2R
    bool inside_monotone = false;             // nonincreasing in n
    bool separated = false;                   // last annulus value > 10 x last inside value
    bool inconclusive = false;                // n_max too small for a trend
};

/// Samples f_{delta_n} and f_{epsilon_n} on the grid for n = 1..n_max.
/// `tolerance` is the sup-distance threshold for the two derivative
/// samples to count as converged.
DehnPairReport dehn_derivative_pair(const DehnSchedule& schedule, const PointCloud& grid, double tolerance = 0.1);

/// theta(x) = pi + (pi/2) sin(2 pi ln ln(1/x)) for x < 1/e, pi otherwise.
AngleProfile default_oscillation_profile();

/// Throws DomainError when the profile leaves [pi/2, 3pi/2].
MapDescriptor oscillating_map(const AngleProfile& profile);

struct OscillationRun {
    OrbitTrace trace;
    LimitSetEstimate omega;
    double hausdorff = 0.0;  // to the expected orbit
    PointCloud expected;
};

/// Traces the probe x in {1, -1} (or any x on the real axis) down to t_lo
/// and compares the omega-limit estimate with the expected orbit: the point
/// |x| for x > 0 and the arc |x| e^{i theta}, theta between the profile
/// bounds, for x < 0. Tail levels are chosen so the deepest tail spans one
/// full oscillation period of the profile.
OscillationRun oscillation_experiment(const AngleProfile& profile, double x, double t_lo = 1e-300,
                                      int samples_per_decade = 32);

struct CatalogEntry {
    std::string name;
    MapDescriptor map;
    PlanarPoint probe{1.0, 0.0};
    std::string expected_orbit;  // description
    PointCloud expected;         // dense sample of the expected orbit
    double t_hi = 1.0;
    double t_lo = 1e-6;
    bool illustrative = false;   // surrogate, not an exact family
};

std::vector<CatalogEntry> builtin_catalog();

}  // namespace qcorbit
