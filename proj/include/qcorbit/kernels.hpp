#pragma once

// Data-parallel kernels. Each OpenMP kernel has a serial twin with the same
// per-element arithmetic; the serial versions are the reference the tests
// compare against and the baseline for bench/bench_kernels.

#include "qcorbit/maps.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qcorbit::kernels {

/// Runs body(i) for i in [0, n). The body must not touch shared mutable
/// state except slot i of its own output. The first exception thrown by any
/// iteration is rethrown on the calling thread.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);
void for_each_index_serial(std::size_t n, const std::function<void(std::size_t)>& body);

/// max_{a in A} min_{b in B} |a - b|
double directed_hausdorff(std::span<const PlanarPoint> a, std::span<const PlanarPoint> b);
double directed_hausdorff_serial(std::span<const PlanarPoint> a, std::span<const PlanarPoint> b);

/// True when some edge of p properly intersects some edge of q. Closed
/// polygons include the edge from the last vertex back to the first.
bool segments_cross(std::span<const PlanarPoint> p, bool p_closed, std::span<const PlanarPoint> q, bool q_closed);
bool segments_cross_serial(std::span<const PlanarPoint> p, bool p_closed, std::span<const PlanarPoint> q,
                           bool q_closed);

std::vector<PlanarPoint> eval_many(const MapDescriptor& map, std::span<const PlanarPoint> points);
std::vector<PlanarPoint> eval_many_serial(const MapDescriptor& map, std::span<const PlanarPoint> points);

struct BeltramiSample {
    PlanarPoint z;
    PlanarPoint mu;
    bool reliable = true;
};

/// Finite-difference Beltrami coefficients on a grid, with step
/// relative_step * |z| at each point.
std::vector<BeltramiSample> beltrami_sweep(const MapDescriptor& map, std::span<const PlanarPoint> grid,
                                           double relative_step);
std::vector<BeltramiSample> beltrami_sweep_serial(const MapDescriptor& map, std::span<const PlanarPoint> grid,
                                                  double relative_step);

struct RasterOptions {
    int cells = 1024;              // cells along the longer side of the image bounding box
    double gap_fraction = 0.7;     // max image-space gap between adjacent samples, in cells
    std::size_t max_samples = std::size_t{1} << 26;
};

/// Lebesgue measure of f(B(center, r)), estimated by flagging raster cells
/// hit by forward images of a polar sample grid. Counts each image point
/// once regardless of multiplicity.
double raster_image_area(const MapDescriptor& map, PlanarPoint center, double r, const RasterOptions& options = {});
double raster_image_area_serial(const MapDescriptor& map, PlanarPoint center, double r,
                                const RasterOptions& options = {});

}  // namespace qcorbit::kernels
