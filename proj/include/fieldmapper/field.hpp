#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fieldmapper/common.hpp"

namespace fieldmapper {

struct DomainBox {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;

    bool contains(const Point& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    Point clamp(const Point& p) const;
    void validate() const;
};

enum class FieldKind {
    AnalyticSinusoid,
    SumOfGaussianBumps,
    TabulatedGrid,
};

struct GaussianBump {
    Point center;
    double amplitude = 1.0;
    double sigma = 0.1;
};

struct TabulatedField {
    int side_count = 0;              // values form a side_count x side_count grid
    std::vector<double> values;      // row-major, same indexing as TestGrid
};

/// Ground-truth scalar field description. Only the simulator and metric code
/// may evaluate it; agents see measurements only.
struct FieldSpec {
    FieldKind kind = FieldKind::AnalyticSinusoid;
    DomainBox box;

    // analytic-sinusoid: sin(2*pi*freq_x*x) + cos(2*pi*freq_y*y)
    double freq_x = 1.0;
    double freq_y = 2.0;

    std::vector<GaussianBump> bumps;
    TabulatedField table;

    double g_min = -2.0;
    double g_max = 2.0;
    std::optional<double> lipschitz_hint;

    // Additive measurement noise hook; zero keeps Assumption-4 exactness.
    double noise_sigma = 0.0;

    std::string to_json() const;
    static FieldSpec from_json(const std::string& text);
    static FieldSpec paper_sinusoid();
    static TabulatedField load_table_csv(const std::string& path, int side_count);
};

struct TestGrid {
    int side_count = 0;          // G
    DomainBox box;
    std::vector<Point> points;   // row-major: index = j * G + k, point (j,k)

    double spacing() const { return (box.x_max - box.x_min) / (side_count - 1); }
    int size() const { return side_count * side_count; }
    int index(int j, int k) const { return j * side_count + k; }
    const Point& at(int j, int k) const { return points[index(j, k)]; }
};

double eval_field(const FieldSpec& spec, const Point& p);
TestGrid make_test_grid(const DomainBox& box, int side_count);
bool in_true_high_intensity(const FieldSpec& spec, const Point& p, double g_thresh);

/// Truth evaluated over every grid point, in grid order.
std::vector<double> eval_field_on_grid(const FieldSpec& spec, const TestGrid& grid);

}  // namespace fieldmapper
