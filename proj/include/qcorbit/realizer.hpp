#pragma once

// Synthesis of a piecewise-annulus quasiconformal map whose orbit O(1)
// accumulates on a prescribed compact connected set X, and verification of
// the result through its orbit curve.
//
// X is given as a polyline inside the annulus 1/C <= |z| <= C. For each
// k the planner builds a staircase path Gamma_k of circular arcs and radial
// segments within 1/(2k) of X; the paths are chained end to start and every
// segment becomes one ring of the map (a spiral ring for an arc, a radial
// stretch for a radial segment), so that gamma_1 traverses the paths as r
// decreases.

#include "qcorbit/maps.hpp"
#include "qcorbit/rescale.hpp"

#include <limits>
#include <optional>
#include <variant>
#include <vector>

namespace qcorbit {

struct TargetSet {
    PointCloud polyline;
    double C = 2.0;
};

/// Throws DomainError unless the polyline is nonempty, avoids 0 and lies in
/// 1/C <= |z| <= C (relative slack 1e-12).
void validate(const TargetSet& target);

/// True when first and last vertex coincide and there are at least 3 vertices.
bool is_closed(const TargetSet& target);

/// True when every vertex equals the first one.
bool is_singleton(const TargetSet& target);

/// Circular arc of radius s; angles are unwrapped.
struct Arc {
    double s = 1.0;
    double theta_start = 0.0;
    double theta_end = 0.0;
};

/// Radial segment along the ray of angle theta.
struct Radial {
    double theta = 0.0;
    double s_start = 1.0;
    double s_end = 1.0;
};

using PathSegment = std::variant<Arc, Radial>;

PlanarPoint start_point(const PathSegment& segment);
PlanarPoint end_point(const PathSegment& segment);
/// Unwrapped angle at the end of the segment.
double end_angle(const PathSegment& segment);

/// Points along a path with spacing at most `spacing`.
PointCloud sample_path(const std::vector<PathSegment>& path, double spacing);

/// Points along the target polyline with spacing at most `spacing`.
PointCloud sample_target(const TargetSet& target, double spacing);

/// Staircase path within Hausdorff distance 1/(2k) of the polyline. Open
/// polylines are walked backwards when `reverse` is set; closed ones always
/// forwards. `start_angle` is the unwrapped angle assigned to the first
/// vertex walked (defaults to its argument). A singleton target gives an
/// empty path. Throws DomainError when a polyline edge enters |z| < 1/C.
std::vector<PathSegment> cover_path(const TargetSet& target, int k, bool reverse = false,
                                    std::optional<double> start_angle = std::nullopt);

struct CoverBlock {
    int k = 1;
    std::vector<PathSegment> path;
};

/// Gamma_k for k = k_min..k_max, chained: open polylines alternate direction
/// and unwrapped angles carry over from one block to the next.
std::vector<CoverBlock> plan_cover(const TargetSet& target, int k_min, int k_max);

struct AlphaPolicy {
    double cap = 1.0;
    double admissible_fraction = 0.5;  // of spiral_alpha_max(K)
    // Further shrink |alpha| until the ring's exact distortion is below
    // 2 max{K, 1/K}.
    bool bound_distortion = true;
};

struct RadialPolicy {
    double cap = 0.5;
    double admissible_fraction = 0.5;  // of exp(-|ln(L/K)|)
    bool bound_distortion = true;      // distortion below 2 max{K, L, 1/K, 1/L}
};

/// |alpha| used for a spiral ring with stretch K.
double spiral_alpha_for(double K, const AlphaPolicy& policy);

/// t = r_in / r_out used for a radial ring from K to L.
double radial_t_for(double K, double L, const RadialPolicy& policy);

/// Spiral ring carrying gamma_1 from s e^{i theta1} to s e^{i theta2}.
AnnulusPiece plan_arc_piece(double s, double theta1, double theta2, double r_out, const AlphaPolicy& policy = {},
                            double C = std::numeric_limits<double>::infinity());

/// Radial ring carrying gamma_1 from s1 e^{i theta} to s2 e^{i theta}.
AnnulusPiece plan_radial_piece(double s1, double s2, double theta, double r_out, const RadialPolicy& policy = {},
                               double C = std::numeric_limits<double>::infinity());

struct SynthesisOptions {
    int k_min = 1;
    int k_max = 4;
    double r_start = 1.0;
    AlphaPolicy alpha;
    RadialPolicy radial;
};

struct Synthesis {
    PiecewiseAnnulus map;
    std::vector<CoverBlock> blocks;
    double distortion_bound = 1.0;  // max over rings of the exact ring distortion
    double r_end = 0.0;             // innermost radius
};

/// Plans one ring per path segment, starting at r_start. Throws EmptyPlanError
/// when k_max < k_min.
Synthesis synthesize(const TargetSet& target, const SynthesisOptions& options = {});

/// As synthesize, with r_start chosen so that the innermost ring ends at
/// 1.01 * depth.
Synthesis synthesize_to_depth(const TargetSet& target, double depth, SynthesisOptions options = {});

struct VerifyOptions {
    double depth = 1e-6;
    std::optional<double> t_hi;  // default: outermost radius, or 1
    int samples_per_decade = 64;
    double tol_hausdorff = 0.05;
    double tol_breakpoint = 1e-6;
    std::optional<double> distortion_limit;  // default 4 C^2
    int grid_radii = 100;
    int grid_angles = 100;
    double fd_relative_step = 1e-5;
    double target_spacing = 1e-3;
};

struct VerificationReport {
    OrbitTrace trace;
    LimitSetEstimate omega;
    RingBounds rings;
    double hausdorff = 0.0;
    double breakpoint_error = 0.0;
    double max_distortion = 1.0;  // numeric, over reliable grid samples
    double distortion_limit = 0.0;
    std::size_t grid_points = 0;
    std::size_t unreliable_points = 0;
    bool all_mu_below_one = true;
    bool converged = false;
    bool passed = false;
    VerifyOptions options;
};

/// Traces gamma_1 over [depth, t_hi], estimates its omega-limit set and
/// compares it with the target; also checks breakpoint fidelity of
/// piecewise-annulus maps and sweeps a Beltrami grid. Throws
/// InsufficientDepthError when depth lies above the innermost ring.
VerificationReport verify_realization(const MapDescriptor& map, const TargetSet& target,
                                      const VerifyOptions& options = {});

}  // namespace qcorbit
