#include "qcorbit/realizer.hpp"

#include "qcorbit/geometry.hpp"
#include "qcorbit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qcorbit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kAngleEps = 1e-12;
constexpr double kRadiusEps = 1e-12;
constexpr double kSameCircle = 1e-9;
constexpr double kDistortionMargin = 1e-3;

double wrapped(double phi) { return std::remainder(phi, kTwoPi); }

void check_in_annulus(double s, double C, const char* what) {
    if (!(s > 0.0) || s < (1.0 / C) * (1.0 - kRadiusEps) || s > C * (1.0 + kRadiusEps))
        throw DomainError(std::string(what) + ": radius outside the annulus 1/C <= |z| <= C");
}

double end_radius(const PathSegment& seg) {
    return std::visit(overloaded{[](const Arc& a) { return a.s; }, [](const Radial& r) { return r.s_end; }}, seg);
}

// Builds a path from a moving (radius, unwrapped angle) state, merging
// collinear pieces and skipping negligible moves.
class PathBuilder {
public:
    PathBuilder(double radius, double angle) : radius_(radius), angle_(angle) {}

    void arc_to(double angle) {
        if (std::abs(angle - angle_) <= kAngleEps) return;
        if (!path_.empty()) {
            if (auto* last = std::get_if<Arc>(&path_.back());
                last && last->s == radius_ && (last->theta_end - last->theta_start) * (angle - angle_) > 0.0) {
                last->theta_end = angle;
                angle_ = angle;
                return;
            }
        }
        path_.push_back(Arc{radius_, angle_, angle});
        angle_ = angle;
    }

    void radial_to(double radius) {
        if (std::abs(radius - radius_) <= kRadiusEps * radius_) return;
        if (!path_.empty()) {
            if (auto* last = std::get_if<Radial>(&path_.back());
                last && last->theta == angle_ && (last->s_end - last->s_start) * (radius - radius_) > 0.0) {
                last->s_end = radius;
                radius_ = radius;
                return;
            }
        }
        path_.push_back(Radial{angle_, radius_, radius});
        radius_ = radius;
    }

    double radius() const { return radius_; }
    double angle() const { return angle_; }
    std::vector<PathSegment> take() { return std::move(path_); }

private:
    double radius_;
    double angle_;
    std::vector<PathSegment> path_;
};

std::vector<PathSegment> cover_from(const TargetSet& target, int k, bool reverse, double radius, double angle) {
    PointCloud v = target.polyline;
    if (reverse && !is_closed(target)) std::reverse(v.begin(), v.end());
    const double step = 1.0 / (4.0 * k);
    const double inner = (1.0 / target.C) * (1.0 - kRadiusEps);
    PathBuilder path(radius, angle);
    for (std::size_t i = 1; i < v.size(); ++i) {
        const PlanarPoint a = v[i - 1], b = v[i];
        if (std::abs(b - a) <= kRadiusEps * std::abs(a)) continue;
        if (segment_distance({0.0, 0.0}, a, b) < inner)
            throw DomainError("cover_path: a polyline edge enters the disk |z| < 1/C");
        const double rb = std::abs(b);
        const double dth = wrapped(std::arg(b) - std::arg(a));
        const double r = path.radius();
        if (std::abs(r - rb) <= kSameCircle * r && r * (1.0 - std::cos(dth / 2.0)) <= step) {
            path.arc_to(path.angle() + dth);
        } else if (std::abs(dth) <= kAngleEps) {
            path.radial_to(rb);
        } else {
            // Staircase along the chord: arc at the current radius, then radial.
            const auto m = static_cast<int>(std::ceil(std::abs(b - a) / step));
            PlanarPoint p = a;
            for (int j = 1; j <= m; ++j) {
                const PlanarPoint q = j == m ? b : a + (b - a) * (double(j) / m);
                path.arc_to(path.angle() + wrapped(std::arg(q) - std::arg(p)));
                path.radial_to(std::abs(q));
                p = q;
            }
        }
    }
    return path.take();
}

double exact_distortion(const AnnulusPiece& p) {
    return std::visit(overloaded{[](const SpiralPiece& s) { return spiral_distortion_max(s.K, s.alpha); },
                                 [](const RadialPiece& r) { return radial_distortion_max(r.K, r.L, r.t); }},
                      p.kind);
}

}  // namespace

void validate(const TargetSet& target) {
    if (target.polyline.empty()) throw DomainError("target polyline is empty");
    if (!(target.C >= 1.0) || !std::isfinite(target.C)) throw DomainError("target C must be a finite value >= 1");
    for (const auto& z : target.polyline) {
        if (!is_finite(z)) throw DomainError("target vertex is not finite");
        if (z == PlanarPoint{0.0, 0.0}) throw DomainError("target vertex at the origin");
        check_in_annulus(std::abs(z), target.C, "target vertex");
    }
}

bool is_closed(const TargetSet& target) {
    const auto& v = target.polyline;
    return v.size() >= 3 && std::abs(v.back() - v.front()) <= kSameCircle * std::abs(v.front());
}

bool is_singleton(const TargetSet& target) {
    const auto& v = target.polyline;
    return std::all_of(v.begin(), v.end(),
                       [&](PlanarPoint z) { return std::abs(z - v.front()) <= kRadiusEps * std::abs(v.front()); });
}

PlanarPoint start_point(const PathSegment& segment) {
    return std::visit(overloaded{[](const Arc& a) { return a.s * unit(a.theta_start); },
                                 [](const Radial& r) { return r.s_start * unit(r.theta); }},
                      segment);
}

PlanarPoint end_point(const PathSegment& segment) {
    return std::visit(overloaded{[](const Arc& a) { return a.s * unit(a.theta_end); },
                                 [](const Radial& r) { return r.s_end * unit(r.theta); }},
                      segment);
}

double end_angle(const PathSegment& segment) {
    return std::visit(overloaded{[](const Arc& a) { return a.theta_end; }, [](const Radial& r) { return r.theta; }},
                      segment);
}

PointCloud sample_path(const std::vector<PathSegment>& path, double spacing) {
    if (!(spacing > 0.0)) throw DomainError("sample_path: spacing must be positive");
    PointCloud out;
    for (const auto& seg : path) {
        std::visit(overloaded{[&](const Arc& a) {
                                  const double len = a.s * std::abs(a.theta_end - a.theta_start);
                                  const auto n = static_cast<int>(std::max(1.0, std::ceil(len / spacing)));
                                  for (int j = 0; j <= n; ++j)
                                      out.push_back(a.s * unit(a.theta_start + (a.theta_end - a.theta_start) * j / n));
                              },
                              [&](const Radial& r) {
                                  const double len = std::abs(r.s_end - r.s_start);
                                  const auto n = static_cast<int>(std::max(1.0, std::ceil(len / spacing)));
                                  for (int j = 0; j <= n; ++j)
                                      out.push_back((r.s_start + (r.s_end - r.s_start) * j / n) * unit(r.theta));
                              }},
                   seg);
    }
    return out;
}

PointCloud sample_target(const TargetSet& target, double spacing) {
    validate(target);
    return densify(target.polyline, spacing);
}

std::vector<PathSegment> cover_path(const TargetSet& target, int k, bool reverse, std::optional<double> start_angle) {
    validate(target);
    if (k < 1) throw DomainError("cover_path: k must be positive");
    if (is_singleton(target)) return {};
    const PlanarPoint first = reverse && !is_closed(target) ? target.polyline.back() : target.polyline.front();
    return cover_from(target, k, reverse, std::abs(first), start_angle.value_or(std::arg(first)));
}

std::vector<CoverBlock> plan_cover(const TargetSet& target, int k_min, int k_max) {
    validate(target);
    if (k_min < 1) throw DomainError("plan_cover: k_min must be positive");
    std::vector<CoverBlock> blocks;
    if (is_singleton(target)) {
        for (int k = k_min; k <= k_max; ++k) blocks.push_back({k, {}});
        return blocks;
    }
    const bool closed = is_closed(target);
    double radius = std::abs(target.polyline.front());
    double angle = std::arg(target.polyline.front());
    for (int k = k_min; k <= k_max; ++k) {
        const bool reverse = !closed && (k - k_min) % 2 == 1;
        CoverBlock block{k, cover_from(target, k, reverse, radius, angle)};
        if (!block.path.empty()) {
            radius = end_radius(block.path.back());
            angle = end_angle(block.path.back());
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

double spiral_alpha_for(double K, const AlphaPolicy& policy) {
    if (!(K > 0.0)) throw DomainError("spiral_alpha_for: K must be positive");
    if (!(policy.cap > 0.0) || !(policy.admissible_fraction > 0.0) || !(policy.admissible_fraction < 1.0))
        throw DomainError("alpha policy needs cap > 0 and admissible_fraction in (0, 1)");
    const double hi = std::min(policy.admissible_fraction * spiral_alpha_max(K), policy.cap);
    if (!policy.bound_distortion) return hi;
    const double target = 2.0 * std::max(K, 1.0 / K) * (1.0 - kDistortionMargin);
    if (spiral_distortion_max(K, hi) <= target) return hi;
    double lo = 0.0, up = hi;
    for (int i = 0; i < 48; ++i) {
        const double mid = 0.5 * (lo + up);
        (spiral_distortion_max(K, mid) <= target ? lo : up) = mid;
    }
    return lo;
}

double radial_t_for(double K, double L, const RadialPolicy& policy) {
    if (!(K > 0.0) || !(L > 0.0)) throw DomainError("radial_t_for: K and L must be positive");
    if (!(policy.cap > 0.0) || !(policy.cap < 1.0) || !(policy.admissible_fraction > 0.0) ||
        !(policy.admissible_fraction < 1.0))
        throw DomainError("radial policy needs cap and admissible_fraction in (0, 1)");
    const double hi = std::min(policy.admissible_fraction * std::exp(-std::abs(std::log(L / K))), policy.cap);
    if (!policy.bound_distortion || K == L) return hi;
    const double target = 2.0 * std::max({K, L, 1.0 / K, 1.0 / L}) * (1.0 - kDistortionMargin);
    if (radial_distortion_max(K, L, hi) <= target) return hi;
    // Distortion falls as t shrinks (|nu| -> 0); bisect on ln t.
    double lo = std::log(hi) - 60.0, up = std::log(hi);
    if (radial_distortion_max(K, L, std::exp(lo)) > target)
        throw DegenerateMapError("radial_t_for: no ratio keeps the distortion bound");
    for (int i = 0; i < 48; ++i) {
        const double mid = 0.5 * (lo + up);
        (radial_distortion_max(K, L, std::exp(mid)) <= target ? lo : up) = mid;
    }
    return std::exp(lo);
}

AnnulusPiece plan_arc_piece(double s, double theta1, double theta2, double r_out, const AlphaPolicy& policy,
                            double C) {
    check_in_annulus(s, C, "plan_arc_piece");
    if (!(r_out > 0.0)) throw DomainError("plan_arc_piece: r_out must be positive");
    const double travel = theta2 - theta1;
    if (!(std::abs(travel) > 0.0)) throw DomainError("plan_arc_piece: zero angular travel");
    const double K = s * s;
    const double alpha = -std::copysign(spiral_alpha_for(K, policy), travel);
    AnnulusPiece p;
    p.r_out = r_out;
    p.r_in = r_out * std::exp(travel / alpha);
    p.kind = SpiralPiece{K, alpha};
    p.base_angle = theta1;
    p.planned_start = s * unit(theta1);
    p.planned_end = s * unit(theta2);
    return p;
}

AnnulusPiece plan_radial_piece(double s1, double s2, double theta, double r_out, const RadialPolicy& policy,
                               double C) {
    check_in_annulus(s1, C, "plan_radial_piece");
    check_in_annulus(s2, C, "plan_radial_piece");
    if (!(r_out > 0.0)) throw DomainError("plan_radial_piece: r_out must be positive");
    if (s1 == s2) throw DomainError("plan_radial_piece: s1 == s2 gives no radial travel");
    const double K = s1 * s1, L = s2 * s2;
    const double t = radial_t_for(K, L, policy);
    AnnulusPiece p;
    p.r_out = r_out;
    p.r_in = t * r_out;
    p.kind = RadialPiece{K, L, t};
    p.base_angle = theta;
    p.planned_start = s1 * unit(theta);
    p.planned_end = s2 * unit(theta);
    return p;
}

Synthesis synthesize(const TargetSet& target, const SynthesisOptions& options) {
    validate(target);
    if (!(options.r_start > 0.0) || !std::isfinite(options.r_start))
        throw DomainError("synthesize: r_start must be positive");
    if (options.k_min < 1) throw DomainError("synthesize: k_min must be positive");
    if (options.k_max < options.k_min) throw EmptyPlanError("synthesize: k_max < k_min leaves no cover path");

    Synthesis out;
    out.blocks = plan_cover(target, options.k_min, options.k_max);

    // Parameters repeat across blocks, so cache the policy searches.
    std::map<double, double> alpha_cache;
    std::map<std::pair<double, double>, double> t_cache;
    const auto alpha_for = [&](double K) {
        auto it = alpha_cache.find(K);
        if (it == alpha_cache.end()) it = alpha_cache.emplace(K, spiral_alpha_for(K, options.alpha)).first;
        return it->second;
    };
    const auto t_for = [&](double K, double L) {
        auto it = t_cache.find({K, L});
        if (it == t_cache.end()) it = t_cache.emplace(std::pair{K, L}, radial_t_for(K, L, options.radial)).first;
        return it->second;
    };

    double r = options.r_start;
    auto& pieces = out.map.pieces;
    for (const auto& block : out.blocks) {
        if (block.path.empty()) {
            // Singleton: a constant ring keeps gamma_1 at the point.
            const PlanarPoint z = target.polyline.front();
            const double K = std::norm(z);
            AnnulusPiece p;
            p.r_out = r;
            p.r_in = 0.5 * r;
            p.kind = RadialPiece{K, K, 0.5};
            p.base_angle = std::arg(z);
            p.k = block.k;
            p.planned_start = p.planned_end = z;
            pieces.push_back(p);
            r = p.r_in;
            continue;
        }
        for (const auto& seg : block.path) {
            AnnulusPiece p = std::visit(
                overloaded{[&](const Arc& a) {
                               AlphaPolicy fixed = options.alpha;
                               fixed.cap = alpha_for(a.s * a.s);
                               fixed.bound_distortion = false;
                               return plan_arc_piece(a.s, a.theta_start, a.theta_end, r, fixed, target.C);
                           },
                           [&](const Radial& rs) {
                               RadialPolicy fixed = options.radial;
                               fixed.cap = t_for(rs.s_start * rs.s_start, rs.s_end * rs.s_end);
                               fixed.bound_distortion = false;
                               return plan_radial_piece(rs.s_start, rs.s_end, rs.theta, r, fixed, target.C);
                           }},
                seg);
            p.k = block.k;
            pieces.push_back(p);
            r = p.r_in;
        }
    }
    if (pieces.empty()) throw EmptyPlanError("synthesize: no annulus pieces were planned");

    const AnnulusPiece& first = pieces.front();
    double theta = std::fmod(first.base_angle, kTwoPi);
    if (theta < 0.0) theta += kTwoPi;
    if (theta >= kTwoPi) theta = 0.0;
    out.map.outer_fill = AffineStretch{first.outer_stretch(), theta};
    out.r_end = r;

    std::map<std::vector<double>, double> distortion_cache;
    for (const auto& p : pieces) {
        const std::vector<double> key = std::visit(
            overloaded{[](const SpiralPiece& s) { return std::vector<double>{0.0, s.K, s.alpha}; },
                       [](const RadialPiece& rp) { return std::vector<double>{1.0, rp.K, rp.L, rp.t}; }},
            p.kind);
        auto it = distortion_cache.find(key);
        if (it == distortion_cache.end()) it = distortion_cache.emplace(key, exact_distortion(p)).first;
        out.distortion_bound = std::max(out.distortion_bound, it->second);
    }
    const double Kf = out.map.outer_fill.K;
    out.distortion_bound = std::max(out.distortion_bound, std::max(Kf, 1.0 / Kf));

    validate(MapDescriptor{out.map});
    return out;
}

Synthesis synthesize_to_depth(const TargetSet& target, double depth, SynthesisOptions options) {
    if (!(depth > 0.0)) throw DomainError("synthesize_to_depth: depth must be positive");
    options.r_start = 1.0;
    const Synthesis unit_plan = synthesize(target, options);
    options.r_start = 1.01 * depth / unit_plan.r_end;
    return synthesize(target, options);
}

VerificationReport verify_realization(const MapDescriptor& map, const TargetSet& target,
                                      const VerifyOptions& options) {
    validate(map);
    validate(target);
    if (!(options.depth > 0.0)) throw DomainError("verify_realization: depth must be positive");
    if (!(options.tol_hausdorff > 0.0) || !(options.tol_breakpoint > 0.0))
        throw DomainError("verify_realization: tolerances must be positive");

    const auto* annulus = std::get_if<PiecewiseAnnulus>(&map);
    const bool has_pieces = annulus && !annulus->pieces.empty();
    const double t_hi = options.t_hi.value_or(has_pieces ? annulus->pieces.front().r_out : 1.0);
    if (has_pieces && options.depth > annulus->pieces.back().r_in)
        throw InsufficientDepthError("verify_realization: depth lies above the innermost planned ring");
    if (!(options.depth < t_hi)) throw DomainError("verify_realization: depth must be below t_hi");

    VerificationReport rep;
    rep.options = options;
    rep.trace = trace_orbit(map, {1.0, 0.0}, t_hi, options.depth, options.samples_per_decade);

    std::vector<double> levels;
    if (has_pieces) {
        int k = annulus->pieces.front().k - 1;
        for (const auto& p : annulus->pieces)
            if (p.k != k) {
                k = p.k;
                if (p.r_out <= t_hi && p.r_out > options.depth) levels.push_back(p.r_out);
            }
    }
    if (levels.size() < 2) levels.clear();
    rep.omega = omega_limit(rep.trace, levels);
    rep.rings = ring_bound_estimate(rep.trace);
    rep.hausdorff = hausdorff(rep.omega.points, sample_target(target, options.target_spacing));

    if (has_pieces) {
        for (const auto& p : annulus->pieces) {
            rep.breakpoint_error = std::max(
                {rep.breakpoint_error, std::abs(gamma(map, {1.0, 0.0}, p.r_out, RadiusMethod::Analytic) - p.planned_start),
                 std::abs(gamma(map, {1.0, 0.0}, p.r_in, RadiusMethod::Analytic) - p.planned_end)});
        }
    }

    const int nr = std::max(options.grid_radii, 2), na = std::max(options.grid_angles, 1);
    PointCloud grid;
    grid.reserve(static_cast<std::size_t>(nr) * na);
    for (int i = 0; i < nr; ++i) {
        const double r = std::exp(std::log(t_hi) + (std::log(options.depth) - std::log(t_hi)) * i / (nr - 1));
        for (int j = 0; j < na; ++j) grid.push_back(std::polar(r, kTwoPi * (j + 0.5) / na));
    }
    rep.grid_points = grid.size();
    for (const auto& s : kernels::beltrami_sweep(map, grid, options.fd_relative_step)) {
        if (!s.reliable || !is_finite(s.mu)) {
            ++rep.unreliable_points;
            continue;
        }
        if (!(std::abs(s.mu) < 1.0)) {
            rep.all_mu_below_one = false;
            continue;
        }
        rep.max_distortion = std::max(rep.max_distortion, distortion_of(s.mu));
    }
    rep.distortion_limit = options.distortion_limit.value_or(4.0 * target.C * target.C);
    rep.converged = rep.omega.converged;
    rep.passed = rep.hausdorff <= options.tol_hausdorff && rep.breakpoint_error <= options.tol_breakpoint &&
                 rep.all_mu_below_one && rep.max_distortion <= rep.distortion_limit && rep.converged;
    return rep;
}

}  // namespace qcorbit
