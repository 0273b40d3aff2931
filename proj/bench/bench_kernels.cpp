// Serial vs OpenMP timings of the data-parallel kernels.
//
//   bench_kernels [repeats]

#include "qcorbit/kernels.hpp"
#include "qcorbit/scenarios.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

using namespace qcorbit;

namespace {

double best_seconds(int repeats, const std::function<void()>& body) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, int repeats, const std::function<void()>& serial, const std::function<void()>& parallel) {
    const double ts = best_seconds(repeats, serial);
    const double tp = best_seconds(repeats, parallel);
    std::printf("%-22s %12.6f %12.6f %8.2fx\n", name, ts, tp, ts / tp);
}

PointCloud circle(double r, int n, double phase = 0.0) {
    PointCloud p;
    for (int i = 0; i < n; ++i) p.push_back(std::polar(r, kTwoPi * i / n + phase));
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    std::printf("threads: %d, repeats: %d\n", omp_get_max_threads(), repeats);
    std::printf("%-22s %12s %12s %9s\n", "kernel", "serial [s]", "openmp [s]", "speedup");

    const PointCloud a = circle(1.0, 8000), b = circle(1.001, 8000, 0.3);
    volatile double sink = 0.0;
    row("directed_hausdorff", repeats, [&] { sink = kernels::directed_hausdorff_serial(a, b); },
        [&] { sink = kernels::directed_hausdorff(a, b); });

    const MapDescriptor spiral = Spiral{2.0, 0.6};
    const PointCloud c1 = circle(1.0, 3000), c2 = circle(1.05, 3000);
    const auto img1 = kernels::eval_many(spiral, c1), img2 = kernels::eval_many(spiral, c2);
    volatile bool crossed = false;
    row("segments_cross", repeats, [&] { crossed = kernels::segments_cross_serial(img1, true, img2, true); },
        [&] { crossed = kernels::segments_cross(img1, true, img2, true); });

    const PointCloud grid = polar_grid(1e-3, 1.0, 400, 400);
    row("eval_many", repeats, [&] { sink = kernels::eval_many_serial(spiral, grid).back().real(); },
        [&] { sink = kernels::eval_many(spiral, grid).back().real(); });
    row("beltrami_sweep", repeats, [&] { sink = kernels::beltrami_sweep_serial(spiral, grid, 1e-5).back().mu.real(); },
        [&] { sink = kernels::beltrami_sweep(spiral, grid, 1e-5).back().mu.real(); });

    const MapDescriptor cube = Power{3};
    row("raster_image_area", repeats, [&] { sink = kernels::raster_image_area_serial(cube, {}, 1.0); },
        [&] { sink = kernels::raster_image_area(cube, {}, 1.0); });
    (void)sink;
    (void)crossed;
    return 0;
}
