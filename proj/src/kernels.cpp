#include "qcorbit/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>

namespace qcorbit::kernels {

namespace {

double nearest_sq(PlanarPoint p, std::span<const PlanarPoint> cloud) {
    double best = std::numeric_limits<double>::infinity();
    for (const PlanarPoint& q : cloud) best = std::min(best, std::norm(p - q));
    return best;
}

double orient(PlanarPoint a, PlanarPoint b, PlanarPoint c) {
    return (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real());
}

bool proper_cross(PlanarPoint a, PlanarPoint b, PlanarPoint c, PlanarPoint d) {
    if (std::max(a.real(), b.real()) < std::min(c.real(), d.real()) ||
        std::max(c.real(), d.real()) < std::min(a.real(), b.real()) ||
        std::max(a.imag(), b.imag()) < std::min(c.imag(), d.imag()) ||
        std::max(c.imag(), d.imag()) < std::min(a.imag(), b.imag()))
        return false;
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

std::size_t edge_count(std::span<const PlanarPoint> p, bool closed) {
    if (p.size() < 2) return 0;
    return closed ? p.size() : p.size() - 1;
}

bool edge_crosses(std::span<const PlanarPoint> p, std::size_t i, std::span<const PlanarPoint> q, bool q_closed) {
    const PlanarPoint a = p[i], b = p[(i + 1) % p.size()];
    const std::size_t m = edge_count(q, q_closed);
    for (std::size_t j = 0; j < m; ++j) {
        if (proper_cross(a, b, q[j], q[(j + 1) % q.size()])) return true;
    }
    return false;
}

PlanarPoint sweep_point(const MapDescriptor& map, PlanarPoint z, double relative_step, bool& reliable,
                        PlanarPoint& mu) {
    const Wirtinger w = wirtinger_numeric(map, z, relative_step * std::abs(z));
    reliable = w.reliable;
    mu = w.mu();
    return z;
}

// Polar sample layout for the raster estimator.
struct RasterPlan {
    PlanarPoint lo, hi;  // bounding box of the image
    double cell = 0.0;
    int nx = 0, ny = 0;
    std::size_t n_r = 0, n_theta = 0;
};

PlanarPoint raster_sample(const MapDescriptor& map, PlanarPoint center, double r, const RasterPlan& plan,
                          std::size_t i, std::size_t j) {
    const double rho = r * static_cast<double>(i) / static_cast<double>(plan.n_r);
    const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(plan.n_theta);
    return eval_unchecked(map, center + std::polar(rho, phi));
}

RasterPlan plan_raster(const MapDescriptor& map, PlanarPoint center, double r, const RasterOptions& options) {
    constexpr std::size_t pilot_r = 64, pilot_t = 256;
    std::vector<PlanarPoint> pilot((pilot_r + 1) * pilot_t);
    for (std::size_t i = 0; i <= pilot_r; ++i)
        for (std::size_t j = 0; j < pilot_t; ++j)
            pilot[i * pilot_t + j] =
                eval_unchecked(map, center + std::polar(r * double(i) / pilot_r, kTwoPi * double(j) / pilot_t));

    double x0 = pilot[0].real(), x1 = x0, y0 = pilot[0].imag(), y1 = y0;
    double gap_r = 0.0, gap_t = 0.0;
    for (std::size_t i = 0; i <= pilot_r; ++i) {
        for (std::size_t j = 0; j < pilot_t; ++j) {
            const PlanarPoint p = pilot[i * pilot_t + j];
            x0 = std::min(x0, p.real());
            x1 = std::max(x1, p.real());
            y0 = std::min(y0, p.imag());
            y1 = std::max(y1, p.imag());
            gap_t = std::max(gap_t, std::abs(p - pilot[i * pilot_t + (j + 1) % pilot_t]));
            if (i < pilot_r) gap_r = std::max(gap_r, std::abs(p - pilot[(i + 1) * pilot_t + j]));
        }
    }
    RasterPlan plan;
    const double margin = 0.02 * std::max(x1 - x0, y1 - y0);
    plan.lo = {x0 - margin, y0 - margin};
    plan.hi = {x1 + margin, y1 + margin};
    const double span = std::max(plan.hi.real() - plan.lo.real(), plan.hi.imag() - plan.lo.imag());
    plan.cell = span / options.cells;
    if (!(plan.cell > 0.0)) throw DegenerateMapError("raster: image of the disk has empty bounding box");
    plan.nx = static_cast<int>(std::ceil((plan.hi.real() - plan.lo.real()) / plan.cell));
    plan.ny = static_cast<int>(std::ceil((plan.hi.imag() - plan.lo.imag()) / plan.cell));
    const double target = options.gap_fraction * plan.cell;
    plan.n_r = std::max<std::size_t>(pilot_r, static_cast<std::size_t>(std::ceil(pilot_r * gap_r / target)));
    plan.n_theta = std::max<std::size_t>(pilot_t, static_cast<std::size_t>(std::ceil(pilot_t * gap_t / target)));
    if ((plan.n_r + 1) * plan.n_theta > options.max_samples) {
        const double shrink = std::sqrt(double(options.max_samples) / double((plan.n_r + 1) * plan.n_theta));
        plan.n_r = std::max<std::size_t>(pilot_r, static_cast<std::size_t>(plan.n_r * shrink));
        plan.n_theta = std::max<std::size_t>(pilot_t, static_cast<std::size_t>(plan.n_theta * shrink));
    }
    return plan;
}

std::size_t cell_of(const RasterPlan& plan, PlanarPoint p) {
    const int ix = std::clamp(static_cast<int>((p.real() - plan.lo.real()) / plan.cell), 0, plan.nx - 1);
    const int iy = std::clamp(static_cast<int>((p.imag() - plan.lo.imag()) / plan.cell), 0, plan.ny - 1);
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(plan.nx) + static_cast<std::size_t>(ix);
}

double flagged_area(const std::vector<std::uint8_t>& flags, const RasterPlan& plan) {
    std::size_t count = 0;
    for (std::uint8_t f : flags) count += f;
    return static_cast<double>(count) * plan.cell * plan.cell;
}

}  // namespace

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) {
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

void for_each_index_serial(std::size_t n, const std::function<void(std::size_t)>& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

double directed_hausdorff(std::span<const PlanarPoint> a, std::span<const PlanarPoint> b) {
    double worst = 0.0;
    const auto count = static_cast<long long>(a.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (long long i = 0; i < count; ++i) worst = std::max(worst, nearest_sq(a[static_cast<std::size_t>(i)], b));
    return std::sqrt(worst);
}

double directed_hausdorff_serial(std::span<const PlanarPoint> a, std::span<const PlanarPoint> b) {
    double worst = 0.0;
    for (const PlanarPoint& p : a) worst = std::max(worst, nearest_sq(p, b));
    return std::sqrt(worst);
}

bool segments_cross(std::span<const PlanarPoint> p, bool p_closed, std::span<const PlanarPoint> q, bool q_closed) {
    const auto n = static_cast<long long>(edge_count(p, p_closed));
    int found = 0;
#pragma omp parallel for reduction(| : found) schedule(dynamic, 64)
    for (long long i = 0; i < n; ++i) {
        if (!found && edge_crosses(p, static_cast<std::size_t>(i), q, q_closed)) found = 1;
    }
    return found != 0;
}

bool segments_cross_serial(std::span<const PlanarPoint> p, bool p_closed, std::span<const PlanarPoint> q,
                           bool q_closed) {
    const std::size_t n = edge_count(p, p_closed);
    for (std::size_t i = 0; i < n; ++i) {
        if (edge_crosses(p, i, q, q_closed)) return true;
    }
    return false;
}

std::vector<PlanarPoint> eval_many(const MapDescriptor& map, std::span<const PlanarPoint> points) {
    validate(map);
    std::vector<PlanarPoint> out(points.size());
    const auto n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = eval_unchecked(map, points[k]);
    }
    return out;
}

std::vector<PlanarPoint> eval_many_serial(const MapDescriptor& map, std::span<const PlanarPoint> points) {
    validate(map);
    std::vector<PlanarPoint> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = eval_unchecked(map, points[i]);
    return out;
}

std::vector<BeltramiSample> beltrami_sweep(const MapDescriptor& map, std::span<const PlanarPoint> grid,
                                           double relative_step) {
    validate(map);
    std::vector<BeltramiSample> out(grid.size());
    const auto n = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        auto& s = out[static_cast<std::size_t>(i)];
        s.z = sweep_point(map, grid[static_cast<std::size_t>(i)], relative_step, s.reliable, s.mu);
    }
    return out;
}

std::vector<BeltramiSample> beltrami_sweep_serial(const MapDescriptor& map, std::span<const PlanarPoint> grid,
                                                  double relative_step) {
    validate(map);
    std::vector<BeltramiSample> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        out[i].z = sweep_point(map, grid[i], relative_step, out[i].reliable, out[i].mu);
    return out;
}

double raster_image_area(const MapDescriptor& map, PlanarPoint center, double r, const RasterOptions& options) {
    validate(map);
    const RasterPlan plan = plan_raster(map, center, r, options);
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(plan.nx) * static_cast<std::size_t>(plan.ny), 0);
    const auto rows = static_cast<long long>(plan.n_r + 1);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < plan.n_theta; ++j) {
            const std::size_t c = cell_of(plan, raster_sample(map, center, r, plan, static_cast<std::size_t>(i), j));
            std::atomic_ref<std::uint8_t>(flags[c]).store(1, std::memory_order_relaxed);
        }
    }
    return flagged_area(flags, plan);
}

double raster_image_area_serial(const MapDescriptor& map, PlanarPoint center, double r,
                                const RasterOptions& options) {
    validate(map);
    const RasterPlan plan = plan_raster(map, center, r, options);
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(plan.nx) * static_cast<std::size_t>(plan.ny), 0);
    for (std::size_t i = 0; i <= plan.n_r; ++i)
        for (std::size_t j = 0; j < plan.n_theta; ++j) flags[cell_of(plan, raster_sample(map, center, r, plan, i, j))] = 1;
    return flagged_area(flags, plan);
}

}  // namespace qcorbit::kernels
