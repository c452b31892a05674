#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fieldmapper/common.hpp"
#include "fieldmapper/field.hpp"

namespace fieldmapper {

/// Thresholded estimate grid, indexed identically to TestGrid (bit (j,k) at
/// index j * G + k).
struct BinaryMap {
    int side_count = 0;
    std::vector<std::uint8_t> bits;

    std::uint8_t at(int j, int k) const { return bits[j * side_count + k]; }
    std::uint8_t& at(int j, int k) { return bits[j * side_count + k]; }
};

struct Circle {
    double cx = 0.0;
    double cy = 0.0;
    double r = 0.0;
};

struct CircleSet {
    std::vector<Circle> circles;
    std::vector<double> scores;  // normalized, sorted descending

    std::size_t size() const { return circles.size(); }
    bool empty() const { return circles.empty(); }
};

struct HoughConfig {
    double r_min = 0.05;
    double r_max = 0.15;
    double sensitivity = 1.0;
    double radius_step = 0.0;  // 0 = one grid cell

    void validate() const {
        if (!(r_min > 0.0) || !(r_min < r_max)) {
            throw ConfigError("HoughConfig: requires 0 < r_min < r_max");
        }
        if (sensitivity < 0.0 || sensitivity > 1.0) {
            throw ConfigError("HoughConfig: sensitivity must be in [0, 1]");
        }
    }
};

/// Accumulator score floor for a given sensitivity; 1 accepts weak circle
/// evidence, 0 demands near-perfect circles.
inline double score_floor(double sensitivity) { return 0.9 - 0.6 * sensitivity; }

/// bits = 1 where mean > g_thresh; ties fall to 0.
BinaryMap binarize(const Eigen::VectorXd& mean, int side_count, double g_thresh);

struct GridIndex {
    int j = 0;
    int k = 0;
};

/// Every 1-pixel with at least one 4-neighbor that is 0 or off-grid.
std::vector<GridIndex> boundary_pixels(const BinaryMap& map);

/// Classical accumulator circular Hough transform over quantized radii.
CircleSet detect_circles(const BinaryMap& map, const HoughConfig& cfg, const TestGrid& grid);

/// Strict membership in the margin-inflated disc.
bool point_in_circle(const Point& p, const Circle& c, double margin);

bool point_in_any_circle(const Point& p, const CircleSet& circles, double margin);

// PGM (P2) import/export, row-major in TestGrid index order.
void write_pgm(const std::string& path, const BinaryMap& map, int maxval = 1);
void write_pgm_gray(const std::string& path, const Eigen::VectorXd& values, int side_count);
BinaryMap read_pgm(const std::string& path);

}  // namespace fieldmapper
