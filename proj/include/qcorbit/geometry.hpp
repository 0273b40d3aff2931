#pragma once

#include "qcorbit/types.hpp"

#include <span>
#include <vector>

namespace qcorbit {

/// Area enclosed by a closed polygon (absolute shoelace sum).
double enclosed_area(std::span<const PlanarPoint> polygon);

/// True iff some edge of one closed polygon properly crosses an edge of
/// the other.
bool curves_cross(std::span<const PlanarPoint> poly1, std::span<const PlanarPoint> poly2);

/// Symmetric Hausdorff distance between two finite point clouds.
double hausdorff(std::span<const PlanarPoint> a, std::span<const PlanarPoint> b);

/// Points along a polyline with consecutive spacing at most `spacing`,
/// vertices included.
std::vector<PlanarPoint> densify(std::span<const PlanarPoint> polyline, double spacing);

/// Distance from p to the segment [a, b].
double segment_distance(PlanarPoint p, PlanarPoint a, PlanarPoint b);

/// Largest distance between consecutive points.
double max_gap(std::span<const PlanarPoint> points);

}  // namespace qcorbit
