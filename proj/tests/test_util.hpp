#pragma once

#include <random>

#include "fieldmapper/hough.hpp"

namespace fieldmapper::testing {

/// Brute-force rasterization oracle: fills every cell whose center lies
/// within the disc. Grid indexing matches TestGrid (cell (j,k) at index
/// j * G + k, coordinate (j * delta, k * delta) on the unit box).
inline BinaryMap rasterize_disc(int side_count, double cx, double cy, double r) {
    BinaryMap map;
    map.side_count = side_count;
    map.bits.assign(static_cast<std::size_t>(side_count) * side_count, 0);
    const double delta = 1.0 / (side_count - 1);
    for (int j = 0; j < side_count; ++j) {
        for (int k = 0; k < side_count; ++k) {
            const double dx = j * delta - cx;
            const double dy = k * delta - cy;
            if (dx * dx + dy * dy <= r * r) {
                map.at(j, k) = 1;
            }
        }
    }
    return map;
}

/// Rasterizes just the circle boundary: every cell whose center lies within
/// half a cell of the ideal circle.
inline BinaryMap rasterize_ring(int side_count, double cx, double cy, double r) {
    BinaryMap map;
    map.side_count = side_count;
    map.bits.assign(static_cast<std::size_t>(side_count) * side_count, 0);
    const double delta = 1.0 / (side_count - 1);
    for (int j = 0; j < side_count; ++j) {
        for (int k = 0; k < side_count; ++k) {
            const double d = std::hypot(j * delta - cx, k * delta - cy);
            if (std::abs(d - r) <= 0.5 * delta) {
                map.at(j, k) = 1;
            }
        }
    }
    return map;
}

inline Point random_point(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    const double x = u(rng);
    const double y = u(rng);
    return {x, y};
}

}  // namespace fieldmapper::testing
