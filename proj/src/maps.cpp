#include "qcorbit/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qcorbit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& what) { throw DescriptorError(what); }

bool finite(double v) { return std::isfinite(v); }

// h_{K,0}(z) = K x + i y
PlanarPoint stretch_x(double K, PlanarPoint z) { return {K * z.real(), z.imag()}; }

PlanarPoint affine(double K, double theta, PlanarPoint z) { return unit(theta) * stretch_x(K, z); }

// |z|^{i alpha}, 0 at the origin
PlanarPoint spiral_factor(double alpha, PlanarPoint z) {
    const double r = std::abs(z);
    if (r == 0.0) return {0.0, 0.0};
    return unit(alpha * std::log(r));
}

PlanarPoint power(PlanarPoint z, int d) {
    PlanarPoint result{1.0, 0.0};
    PlanarPoint base = z;
    for (unsigned e = static_cast<unsigned>(d); e != 0; e >>= 1) {
        if (e & 1u) result *= base;
        base *= base;
    }
    return result;
}

PlanarPoint dehn_ring(int sign, PlanarPoint z) {
    const double r = std::abs(z);
    return z * unit(sign * kTwoPi * (r - 1.0));
}

// Closed-form mu of the spiral map at argument psi = 2 arg z.
PlanarPoint spiral_mu(double K, double alpha, double psi) {
    const double k = (K - 1.0) / (K + 1.0);
    const double s = std::sin(psi), c = std::cos(psi);
    const PlanarPoint num{2.0 * k - alpha * s, alpha * (c + k)};
    const PlanarPoint den{2.0 + alpha * k * s, alpha * (1.0 + k * c)};
    return num / den;
}

// mu of R(x+iy) = K r^nu x + i y at (x, y).
PlanarPoint radial_mu(double K, double nu, double x, double y) {
    const double r2 = x * x + y * y;
    const double c = K * std::pow(r2, nu / 2.0 - 1.0);
    const double a = (nu + 1.0) * x * x + y * y;
    const double b = nu * x * y;
    return PlanarPoint{c * a - 1.0, c * b} / PlanarPoint{c * a + 1.0, -c * b};
}

double distortion_from_abs(double m) { return (1.0 + m) / (1.0 - m); }

// Maximize f over [lo, hi] by a dense scan followed by golden-section
// refinement around the best sample.
template <class F>
double scan_max(F&& f, double lo, double hi, int n = 2048) {
    const double step = (hi - lo) / n;
    double best = -kInf;
    double best_x = lo;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + step * i;
        const double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    return std::max({best, f1, f2});
}

void validate_piece(const AnnulusPiece& p, std::size_t i) {
    std::ostringstream where;
    where << "piecewise_annulus piece " << i << ": ";
    if (!(p.r_out > 0.0) || !finite(p.r_out)) fail(where.str() + "r_out must be positive");
    if (!(p.r_in > 0.0) || !(p.r_in < p.r_out)) fail(where.str() + "r_in must lie in (0, r_out)");
    if (!finite(p.base_angle)) fail(where.str() + "base_angle must be finite");
    std::visit(overloaded{
                   [&](const SpiralPiece& s) {
                       if (!(s.K > 0.0) || !finite(s.K)) fail(where.str() + "spiral K must be positive");
                       if (!finite(s.alpha) || s.alpha == 0.0) fail(where.str() + "spiral alpha must be nonzero");
                       if (!(std::abs(s.alpha) < spiral_alpha_max(s.K)))
                           fail(where.str() + "spiral alpha exceeds the admissibility bound");
                   },
                   [&](const RadialPiece& r) {
                       if (!(r.K > 0.0) || !(r.L > 0.0) || !finite(r.K) || !finite(r.L))
                           fail(where.str() + "radial K, L must be positive");
                       if (std::abs(r.t - p.r_in / p.r_out) > 1e-12 * r.t)
                           fail(where.str() + "radial t must equal r_in/r_out");
                       if (!(r.t < std::exp(-std::abs(std::log(r.L / r.K)))))
                           fail(where.str() + "radial t violates t < exp(-|ln(L/K)|)");
                   }},
               p.kind);
}

PlanarPoint eval_piece(const AnnulusPiece& p, PlanarPoint z) {
    return std::visit(overloaded{[&](const SpiralPiece& s) {
                                     const PlanarPoint w = z / p.r_out;
                                     return p.r_out * unit(p.base_angle) * stretch_x(s.K, w) * spiral_factor(s.alpha, w);
                                 },
                                 [&](const RadialPiece& r) {
                                     const double nu = std::log(r.L / r.K) / std::log(r.t);
                                     const double rel = std::abs(z) / p.r_out;
                                     return unit(p.base_angle) * PlanarPoint{r.K * std::pow(rel, nu) * z.real(), z.imag()};
                                 }},
                      p.kind);
}

PlanarPoint mu_piece(const AnnulusPiece& p, PlanarPoint z) {
    return std::visit(overloaded{[&](const SpiralPiece& s) { return spiral_mu(s.K, s.alpha, 2.0 * std::arg(z)); },
                                 [&](const RadialPiece& r) {
                                     const double nu = std::log(r.L / r.K) / std::log(r.t);
                                     return radial_mu(r.K, nu, z.real() / p.r_out, z.imag() / p.r_out);
                                 }},
                      p.kind);
}

// Index of the piece whose ring contains radius r: -1 above the outermost
// ring, pieces.size() below the innermost one. Rings are closed; on a shared
// boundary the outer piece wins.
long locate_piece(const PiecewiseAnnulus& m, double r) {
    const auto& ps = m.pieces;
    if (ps.empty() || r > ps.front().r_out) return -1;
    if (r < ps.back().r_in) return static_cast<long>(ps.size());
    // first piece with r_in <= r (r_in strictly decreasing)
    auto it = std::partition_point(ps.begin(), ps.end(), [r](const AnnulusPiece& p) { return p.r_in > r; });
    return static_cast<long>(it - ps.begin());
}

PlanarPoint eval_dehn_schedule(const DehnScheduleMap& m, PlanarPoint z) {
    const double rho = std::abs(z);
    if (rho >= 1.0) return z;
    const DehnRadii R = dehn_radii(m);
    for (int n = 0; n < m.n_max; ++n) {
        if (rho >= R.s[n]) return z;  // [s_n, r_n]
        if (rho >= R.t[n]) return R.t[n] * dehn_ring(+1, z / R.t[n]);
        if (rho >= R.u[n]) return z;
        if (rho >= R.r[n + 1]) return R.r[n + 1] * dehn_ring(-1, z / R.r[n + 1]);
    }
    return z;
}

double reduce_angle(double phi) {
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
    return phi;
}

}  // namespace

double RadialStretch::nu() const { return std::log(L / K) / std::log(t); }

double AngleProfile::operator()(double x) const {
    if (shape == Shape::Constant) return value;
    if (!(x < std::exp(-1.0))) return center;
    return center + amplitude * std::sin(frequency * std::log(std::log(1.0 / x)));
}

double AngleProfile::lower_bound() const {
    return shape == Shape::Constant ? value : center - std::abs(amplitude);
}

double AngleProfile::upper_bound() const {
    return shape == Shape::Constant ? value : center + std::abs(amplitude);
}

double AnnulusPiece::outer_stretch() const {
    return std::visit([](const auto& k) { return k.K; }, kind);
}

double AnnulusPiece::inner_stretch() const {
    return std::visit(overloaded{[](const SpiralPiece& s) { return s.K; }, [](const RadialPiece& r) { return r.L; }},
                      kind);
}

double AnnulusPiece::inner_angle() const { return angle_at(r_in); }

double AnnulusPiece::stretch_at(double r) const {
    return std::visit(overloaded{[](const SpiralPiece& s) { return s.K; },
                                 [&](const RadialPiece& p) {
                                     const double nu = std::log(p.L / p.K) / std::log(p.t);
                                     return p.K * std::pow(r / r_out, nu);
                                 }},
                      kind);
}

double AnnulusPiece::angle_at(double r) const {
    return std::visit(overloaded{[&](const SpiralPiece& s) { return base_angle + s.alpha * std::log(r / r_out); },
                                 [&](const RadialPiece&) { return base_angle; }},
                      kind);
}

double RadialPower::radius(double r) const {
    if (r <= 0.0) return 0.0;
    const double u = -std::log(r);
    if (u <= 0.0) return std::pow(r, d_lo);
    const double band = std::floor(u / period);
    const long full = static_cast<long>(band);
    const long odd_bands = full / 2;
    const long even_bands = full - odd_bands;
    double log_radius = -(even_bands * d_lo + odd_bands * d_hi) * period;
    const double rest = u - band * period;
    log_radius -= (full % 2 == 0 ? d_lo : d_hi) * rest;
    return std::exp(log_radius);
}

DehnRadii dehn_radii(const DehnScheduleMap& m) {
    DehnRadii R;
    double r = 1.0;
    R.r.push_back(r);
    for (int n = 1; n <= m.n_max; ++n) {
        const double g = std::pow(m.growth, n);
        const double s = r / g;
        const double t = s / 2.0;
        const double u = t / g;
        r = u / 2.0;
        R.s.push_back(s);
        R.t.push_back(t);
        R.u.push_back(u);
        R.r.push_back(r);
    }
    return R;
}

std::string kind_name(const MapDescriptor& map) {
    return std::visit(overloaded{[](const Linear&) { return "linear"; },
                                 [](const Power&) { return "power"; },
                                 [](const AffineStretch&) { return "affine_stretch"; },
                                 [](const Spiral&) { return "spiral"; },
                                 [](const LogSpiral&) { return "log_spiral"; },
                                 [](const RadialStretch&) { return "radial_stretch"; },
                                 [](const DehnTwist&) { return "dehn_twist"; },
                                 [](const OscillatingTwist&) { return "oscillating_twist"; },
                                 [](const PiecewiseAnnulus&) { return "piecewise_annulus"; },
                                 [](const DehnScheduleMap&) { return "dehn_schedule"; },
                                 [](const RadialPower&) { return "radial_power"; }},
                      map);
}

void validate(const MapDescriptor& map) {
    std::visit(
        overloaded{
            [](const Linear& m) {
                if (!is_finite(m.w) || m.w == PlanarPoint{0.0, 0.0}) fail("linear: w must be finite and nonzero");
            },
            [](const Power& m) {
                if (m.d < 1) fail("power: d must be a positive integer");
            },
            [](const AffineStretch& m) {
                if (!(m.K > 0.0) || !finite(m.K)) fail("affine_stretch: K must be positive");
                if (!(m.theta >= 0.0 && m.theta < kTwoPi)) fail("affine_stretch: theta must lie in [0, 2pi)");
            },
            [](const Spiral& m) {
                if (!(m.K > 0.0) || !finite(m.K)) fail("spiral: K must be positive");
                if (!finite(m.alpha)) fail("spiral: alpha must be finite");
                if (!(std::abs(m.alpha) < spiral_alpha_max(m.K)))
                    fail("spiral: |alpha| must be below |2K/(1-K^2)|");
            },
            [](const LogSpiral& m) {
                if (!finite(m.alpha)) fail("log_spiral: alpha must be finite");
            },
            [](const RadialStretch& m) {
                if (!(m.K > 0.0) || !(m.L > 0.0) || !finite(m.K) || !finite(m.L))
                    fail("radial_stretch: K, L must be positive");
                if (!(m.t > 0.0 && m.t < 1.0)) fail("radial_stretch: t must lie in (0, 1)");
                if (!(m.t < std::exp(-std::abs(std::log(m.L / m.K)))))
                    fail("radial_stretch: t must satisfy t < exp(-|ln(L/K)|)");
            },
            [](const DehnTwist& m) {
                if (m.sign != 1 && m.sign != -1) fail("dehn_twist: sign must be +1 or -1");
            },
            [](const OscillatingTwist& m) {
                const auto& p = m.profile;
                const double lo = p.lower_bound(), hi = p.upper_bound();
                if (!finite(lo) || !finite(hi) || lo < kPi / 2 - 1e-12 || hi > 3 * kPi / 2 + 1e-12)
                    fail("oscillating_twist: profile must stay within [pi/2, 3pi/2]");
                if (p.shape == AngleProfile::Shape::LogLogSine && !(finite(p.frequency) && p.frequency > 0.0))
                    fail("oscillating_twist: frequency must be positive");
            },
            [](const PiecewiseAnnulus& m) {
                validate(MapDescriptor{m.outer_fill});
                for (std::size_t i = 0; i < m.pieces.size(); ++i) {
                    validate_piece(m.pieces[i], i);
                    if (i > 0 && m.pieces[i].r_out != m.pieces[i - 1].r_in)
                        fail("piecewise_annulus: rings must be contiguous (r_out of piece " + std::to_string(i) +
                             " differs from the previous r_in)");
                }
                // Value continuity on every shared boundary circle.
                for (std::size_t i = 0; i <= m.pieces.size(); ++i) {
                    if (m.pieces.empty()) break;
                    const double r = i < m.pieces.size() ? m.pieces[i].r_out : m.pieces.back().r_in;
                    for (int j = 0; j < 8; ++j) {
                        const PlanarPoint z = r * unit(kTwoPi * j / 8.0 + 0.1);
                        const PlanarPoint outside =
                            i == 0 ? affine(m.outer_fill.K, m.outer_fill.theta, z) : eval_piece(m.pieces[i - 1], z);
                        PlanarPoint inside;
                        if (i < m.pieces.size()) {
                            inside = eval_piece(m.pieces[i], z);
                        } else {
                            const auto& last = m.pieces.back();
                            inside = affine(last.inner_stretch(), last.inner_angle(), z);
                        }
                        if (std::abs(outside - inside) > 1e-9 * std::abs(outside))
                            fail("piecewise_annulus: map values disagree on boundary circle " + std::to_string(i));
                    }
                }
            },
            [](const DehnScheduleMap& m) {
                if (m.n_max < 1) fail("dehn_schedule: n_max must be at least 1");
                if (!(m.growth > 1.0) || !finite(m.growth)) fail("dehn_schedule: growth must exceed 1");
            },
            [](const RadialPower& m) {
                if (!(m.d_lo > 0.0) || !(m.d_hi > 0.0) || !finite(m.d_lo) || !finite(m.d_hi))
                    fail("radial_power: exponents must be positive");
                if (!(m.period > 0.0) || !finite(m.period)) fail("radial_power: period must be positive");
            }},
        map);
}

PlanarPoint eval_unchecked(const MapDescriptor& map, PlanarPoint z) {
    return std::visit(
        overloaded{
            [&](const Linear& m) { return m.w * z; },
            [&](const Power& m) { return power(z, m.d); },
            [&](const AffineStretch& m) { return affine(m.K, m.theta, z); },
            [&](const Spiral& m) { return stretch_x(m.K, z) * spiral_factor(m.alpha, z); },
            [&](const LogSpiral& m) { return z * spiral_factor(m.alpha, z); },
            [&](const RadialStretch& m) {
                const double r = std::abs(z);
                if (r > 1.0) return stretch_x(m.K, z);
                if (r < m.t) return stretch_x(m.L, z);
                return PlanarPoint{m.K * std::pow(r, m.nu()) * z.real(), z.imag()};
            },
            [&](const DehnTwist& m) {
                const double r = std::abs(z);
                if (r < 1.0 || r > 2.0) return z;
                return dehn_ring(m.sign, z);
            },
            [&](const OscillatingTwist& m) {
                const double rho = std::abs(z);
                if (rho == 0.0) return z;
                const double phi = reduce_angle(std::arg(z));
                const double theta = m.profile(rho);
                const double g = phi <= kPi ? phi * theta / kPi : theta + (phi - kPi) * (kTwoPi - theta) / kPi;
                return std::polar(rho, g);
            },
            [&](const PiecewiseAnnulus& m) {
                const long i = locate_piece(m, std::abs(z));
                if (i < 0) return affine(m.outer_fill.K, m.outer_fill.theta, z);
                if (i >= static_cast<long>(m.pieces.size())) {
                    const auto& last = m.pieces.back();
                    return affine(last.inner_stretch(), last.inner_angle(), z);
                }
                return eval_piece(m.pieces[static_cast<std::size_t>(i)], z);
            },
            [&](const DehnScheduleMap& m) { return eval_dehn_schedule(m, z); },
            [&](const RadialPower& m) {
                const double r = std::abs(z);
                if (r == 0.0) return z;
                return z * (m.radius(r) / r);
            }},
        map);
}

PlanarPoint eval(const MapDescriptor& map, PlanarPoint z) {
    validate(map);
    if (!is_finite(z)) throw DomainError("eval: point must be finite");
    return eval_unchecked(map, z);
}

double spiral_alpha_max(double K) {
    if (!(K > 0.0)) throw DomainError("spiral_alpha_max: K must be positive");
    if (K == 1.0) return kInf;
    return std::abs(2.0 * K / (1.0 - K * K));
}

PlanarPoint beltrami_analytic(const MapDescriptor& map, PlanarPoint z) {
    if (z == PlanarPoint{0.0, 0.0}) throw DomainError("beltrami_analytic: undefined at z = 0");
    validate(map);
    const auto stretch_mu = [](double K) { return PlanarPoint{(K - 1.0) / (K + 1.0), 0.0}; };
    return std::visit(
        overloaded{
            [&](const Linear&) { return PlanarPoint{0.0, 0.0}; },
            [&](const Power&) { return PlanarPoint{0.0, 0.0}; },
            [&](const AffineStretch& m) { return stretch_mu(m.K); },
            [&](const Spiral& m) { return spiral_mu(m.K, m.alpha, 2.0 * std::arg(z)); },
            [&](const LogSpiral& m) { return spiral_mu(1.0, m.alpha, 2.0 * std::arg(z)); },
            [&](const RadialStretch& m) {
                const double r = std::abs(z);
                if (r > 1.0) return stretch_mu(m.K);
                if (r < m.t) return stretch_mu(m.L);
                return radial_mu(m.K, m.nu(), z.real(), z.imag());
            },
            [&](const PiecewiseAnnulus& m) {
                const long i = locate_piece(m, std::abs(z));
                if (i < 0) return stretch_mu(m.outer_fill.K);
                if (i >= static_cast<long>(m.pieces.size())) return stretch_mu(m.pieces.back().inner_stretch());
                return mu_piece(m.pieces[static_cast<std::size_t>(i)], z);
            },
            [&](const auto&) -> PlanarPoint {
                throw CapabilityError("beltrami_analytic: no closed form for " + kind_name(map));
            }},
        map);
}

Wirtinger wirtinger_numeric(const MapDescriptor& map, PlanarPoint z, double h) {
    if (!(h > 0.0)) throw DomainError("wirtinger_numeric: step must be positive");
    const PlanarPoint dx{h, 0.0}, dy{0.0, h};
    const PlanarPoint fx = (eval_unchecked(map, z + dx) - eval_unchecked(map, z - dx)) / (2.0 * h);
    const PlanarPoint fy = (eval_unchecked(map, z + dy) - eval_unchecked(map, z - dy)) / (2.0 * h);
    const PlanarPoint i{0.0, 1.0};
    Wirtinger w{(fx - i * fy) / 2.0, (fx + i * fy) / 2.0, true};
    const int centre = ring_index(map, z);
    for (PlanarPoint p : {z + dx, z - dx, z + dy, z - dy}) {
        if (ring_index(map, p) != centre) w.reliable = false;
    }
    return w;
}

double distortion_of(PlanarPoint mu) {
    const double m = std::abs(mu);
    if (!(m < 1.0)) throw DegenerateMapError("distortion_of: |mu| >= 1, the map is not quasiconformal here");
    return distortion_from_abs(m);
}

std::vector<PlanarPoint> circle_image(const MapDescriptor& map, double r, int n) {
    if (n < 16) throw DomainError("circle_image: need at least 16 samples");
    if (!(r > 0.0)) throw DomainError("circle_image: radius must be positive");
    validate(map);
    std::vector<PlanarPoint> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = eval_unchecked(map, std::polar(r, kTwoPi * j / n));
    return out;
}

double spiral_distortion_max(double K, double alpha) {
    const double m = scan_max([&](double psi) { return std::abs(spiral_mu(K, alpha, psi)); }, -kPi, kPi);
    if (!(m < 1.0)) return kInf;
    return distortion_from_abs(m);
}

double radial_distortion_max(double K, double L, double t) {
    // The Jacobian of R is [[p, q], [0, 1]] with p = c a(phi), q = c b(phi),
    // c = K |z|^nu running between K and L. D + 1/D = (p^2+q^2+1)/p is convex
    // in c, so the supremum sits on one of the two boundary circles.
    const double nu = std::log(L / K) / std::log(t);
    if (!(1.0 + nu > 0.0)) return kInf;
    double best = 1.0;
    for (double c : {K, L}) {
        const auto dist = [&](double phi) {
            const double cs = std::cos(phi), sn = std::sin(phi);
            const double p = c * ((nu + 1.0) * cs * cs + sn * sn);
            const double q = c * nu * cs * sn;
            const double s = (p * p + q * q + 1.0) / p;
            return (s + std::sqrt(std::max(0.0, s * s - 4.0))) / 2.0;
        };
        best = std::max(best, scan_max(dist, 0.0, kPi));
    }
    return best;
}

int ring_index(const MapDescriptor& map, PlanarPoint z) {
    const double r = std::abs(z);
    return std::visit(overloaded{[&](const RadialStretch& m) { return r > 1.0 ? 0 : (r < m.t ? 2 : 1); },
                                 [&](const DehnTwist&) { return r < 1.0 ? 0 : (r > 2.0 ? 2 : 1); },
                                 [&](const PiecewiseAnnulus& m) { return static_cast<int>(locate_piece(m, r)); },
                                 [&](const DehnScheduleMap& m) {
                                     if (r >= 1.0) return 0;
                                     const DehnRadii R = dehn_radii(m);
                                     for (int n = 0; n < m.n_max; ++n) {
                                         if (r >= R.s[n]) return 4 * n + 1;
                                         if (r >= R.t[n]) return 4 * n + 2;
                                         if (r >= R.u[n]) return 4 * n + 3;
                                         if (r >= R.r[n + 1]) return 4 * n + 4;
                                     }
                                     return 4 * m.n_max + 1;
                                 },
                                 [&](const RadialPower& m) {
                                     const double u = -std::log(r);
                                     return u <= 0.0 ? 0 : 1 + static_cast<int>(std::floor(u / m.period));
                                 },
                                 [](const auto&) { return 0; }},
                      map);
}

bool is_injective(const MapDescriptor& map) {
    return std::visit(overloaded{[](const Power& m) { return m.d == 1; }, [](const auto&) { return true; }}, map);
}

}  // namespace qcorbit
