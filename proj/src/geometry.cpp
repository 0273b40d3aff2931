#include "qcorbit/geometry.hpp"

#include "qcorbit/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace qcorbit {

double enclosed_area(std::span<const PlanarPoint> polygon) {
    if (polygon.size() < 3) throw DomainError("enclosed_area: polygon needs at least 3 vertices");
    // Shoelace on coordinates relative to the first vertex limits cancellation.
    const PlanarPoint origin = polygon[0];
    double twice = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const PlanarPoint a = polygon[i] - origin;
        const PlanarPoint b = polygon[(i + 1) % polygon.size()] - origin;
        twice += a.real() * b.imag() - b.real() * a.imag();
    }
    return std::abs(twice) / 2.0;
}

bool curves_cross(std::span<const PlanarPoint> poly1, std::span<const PlanarPoint> poly2) {
    return kernels::segments_cross(poly1, true, poly2, true);
}

double hausdorff(std::span<const PlanarPoint> a, std::span<const PlanarPoint> b) {
    if (a.empty() || b.empty()) throw DomainError("hausdorff: point clouds must be nonempty");
    return std::max(kernels::directed_hausdorff(a, b), kernels::directed_hausdorff(b, a));
}

std::vector<PlanarPoint> densify(std::span<const PlanarPoint> polyline, double spacing) {
    if (!(spacing > 0.0)) throw DomainError("densify: spacing must be positive");
    std::vector<PlanarPoint> out;
    if (polyline.empty()) return out;
    out.push_back(polyline[0]);
    for (std::size_t i = 1; i < polyline.size(); ++i) {
        const PlanarPoint a = polyline[i - 1], b = polyline[i];
        const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(b - a) / spacing)));
        for (std::size_t s = 1; s <= steps; ++s) out.push_back(a + (b - a) * (double(s) / double(steps)));
    }
    return out;
}

double segment_distance(PlanarPoint p, PlanarPoint a, PlanarPoint b) {
    const PlanarPoint ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    const double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + s * ab));
}

double max_gap(std::span<const PlanarPoint> points) {
    double gap = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) gap = std::max(gap, std::abs(points[i] - points[i - 1]));
    return gap;
}

}  // namespace qcorbit
