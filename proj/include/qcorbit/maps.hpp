#pragma once

// Explicit planar map families, their evaluation and their complex
// dilatation (Beltrami coefficient), both in closed form and by finite
// differences.

#include "qcorbit/types.hpp"

#include <string>
#include <variant>
#include <vector>

namespace qcorbit {

inline constexpr double kDefaultFdStep = 1e-5;

/// z -> w z
struct Linear {
    PlanarPoint w{1.0, 0.0};
};

/// z -> z^d
struct Power {
    int d = 1;
};

/// h_{K,theta}: stretch by K along the x-axis, then rotate by theta.
/// h(z) = e^{i theta} ((K+1)/2 z + (K-1)/2 conj(z)).
struct AffineStretch {
    double K = 1.0;
    double theta = 0.0;
};

/// Distorted logarithmic spiral S(z) = h_{K,0}(z) |z|^{i alpha}.
/// Homeomorphic for |alpha| < |2K/(1-K^2)|.
struct Spiral {
    double K = 1.0;
    double alpha = 0.0;
};

/// z -> z |z|^{i alpha}
struct LogSpiral {
    double alpha = 0.0;
};

/// R(x+iy) = K (x^2+y^2)^{nu/2} x + i y on t <= |z| <= 1, nu = ln(L/K)/ln t.
/// Equals h_{K,0} on |z| = 1 and h_{L,0} on |z| = t; extended by those
/// affine maps outside the ring.
struct RadialStretch {
    double K = 1.0;
    double L = 1.0;
    double t = 0.5;

    double nu() const;
};

/// f^{+/-}(z) = z e^{+/- 2 pi i (|z|-1)} on 1 <= |z| <= 2, identity elsewhere.
struct DehnTwist {
    int sign = 1;
};

/// Angle profile theta(x) of the oscillating twist, bounded in [pi/2, 3pi/2].
struct AngleProfile {
    enum class Shape { LogLogSine, Constant };

    Shape shape = Shape::LogLogSine;
    // LogLogSine: center + amplitude * sin(frequency * ln ln(1/x)) for x < 1/e,
    // center otherwise.
    double center = kPi;
    double amplitude = kPi / 2;
    double frequency = kTwoPi;
    // Constant: value
    double value = kPi;

    double operator()(double x) const;
    double lower_bound() const;
    double upper_bound() const;
};

/// Maps every circle |z| = r onto itself, fixes the positive real axis and
/// sends -r to r e^{i theta(r)}; piecewise linear in the angle on each half.
struct OscillatingTwist {
    AngleProfile profile;
};

struct SpiralPiece {
    double K = 1.0;
    double alpha = 0.0;
};

struct RadialPiece {
    double K = 1.0;
    double L = 1.0;
    double t = 0.5;  // r_in / r_out
};

/// One ring r_in <= |z| <= r_out of a synthesized map. Inside the ring the
/// map is r_out e^{i base_angle} P(z / r_out) with P a spiral or radial
/// stretch.
struct AnnulusPiece {
    double r_out = 1.0;
    double r_in = 0.5;
    std::variant<SpiralPiece, RadialPiece> kind;
    double base_angle = 0.0;
    int k = 0;                   // cover path index the piece belongs to
    PlanarPoint planned_start{};  // planned gamma_1(r_out)
    PlanarPoint planned_end{};    // planned gamma_1(r_in)

    /// Outer-boundary stretch factor (gamma_1 = sqrt(K) e^{i base_angle} there).
    double outer_stretch() const;
    double inner_stretch() const;
    /// Rotation angle of the affine map on the inner boundary circle.
    double inner_angle() const;
    /// Stretch factor K_eff(r) such that |z| = r is sent to an ellipse of
    /// semi-axes K_eff r, r rotated by angle_at(r).
    double stretch_at(double r) const;
    double angle_at(double r) const;
};

/// Concentric rings with strictly decreasing radii. Above the outermost
/// radius the map is outer_fill; below the innermost one it continues with
/// the last piece's inner-boundary affine map.
struct PiecewiseAnnulus {
    std::vector<AnnulusPiece> pieces;
    AffineStretch outer_fill;
};

/// Dehn twist composite on the unit disk: identity on [s_n, r_n] and
/// [u_n, t_n], t_n f^+(z/t_n) on [t_n, s_n], r_{n+1} f^-(z/r_{n+1}) on
/// [r_{n+1}, u_n]. r_1 = 1, r_n/s_n = t_n/u_n = growth^n,
/// s_n/t_n = u_n/r_{n+1} = 2. Identity outside [r_{n_max+1}, 1].
struct DehnScheduleMap {
    int n_max = 6;
    double growth = 2.0;
};

/// Schedule radii, index n-1 for n = 1..n_max; r has n_max+1 entries.
struct DehnRadii {
    std::vector<double> r, s, t, u;
};

DehnRadii dehn_radii(const DehnScheduleMap& map);

/// Radial map z -> rho(|z|) z/|z| where ln rho is piecewise linear in ln r,
/// with slope d_lo on even and d_hi on odd bands of width `period` in -ln r.
struct RadialPower {
    double d_lo = 1.0;
    double d_hi = 2.0;
    double period = 2.0;

    double radius(double r) const;
};

using MapDescriptor = std::variant<Linear, Power, AffineStretch, Spiral, LogSpiral, RadialStretch, DehnTwist,
                                   OscillatingTwist, PiecewiseAnnulus, DehnScheduleMap, RadialPower>;

std::string kind_name(const MapDescriptor& map);

/// Throws DescriptorError when an invariant of the descriptor fails.
void validate(const MapDescriptor& map);

/// f(z). Validates the descriptor first.
PlanarPoint eval(const MapDescriptor& map, PlanarPoint z);

/// f(z) for a descriptor already known to be valid.
PlanarPoint eval_unchecked(const MapDescriptor& map, PlanarPoint z);

/// Admissibility bound |2K/(1-K^2)| on the spiral parameter; +inf at K = 1.
double spiral_alpha_max(double K);

/// Closed-form Beltrami coefficient mu = f_zbar / f_z at z != 0.
PlanarPoint beltrami_analytic(const MapDescriptor& map, PlanarPoint z);

struct Wirtinger {
    PlanarPoint f_z;
    PlanarPoint f_zbar;
    bool reliable = true;  // false when the stencil straddles a ring boundary

    PlanarPoint mu() const { return f_zbar / f_z; }
};

/// Central-difference Wirtinger derivatives with step h.
Wirtinger wirtinger_numeric(const MapDescriptor& map, PlanarPoint z, double h = kDefaultFdStep);

/// (1+|mu|)/(1-|mu|); throws DegenerateMapError when |mu| >= 1.
double distortion_of(PlanarPoint mu);

/// Images of n equally spaced points on |z| = r, in parameter order.
std::vector<PlanarPoint> circle_image(const MapDescriptor& map, double r, int n);

/// Supremum over z of the distortion of Spiral{K, alpha}.
double spiral_distortion_max(double K, double alpha);

/// Supremum over t <= |z| <= 1 of the distortion of RadialStretch{K, L, t}.
double radial_distortion_max(double K, double L, double t);

/// Label of the smooth region containing z; maps that are smooth
/// everywhere return 0. Used to detect stencils straddling ring boundaries.
int ring_index(const MapDescriptor& map, PlanarPoint z);

/// True for families known to be injective on the whole plane.
bool is_injective(const MapDescriptor& map);

}  // namespace qcorbit
