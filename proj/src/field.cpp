#include "fieldmapper/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace fieldmapper {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Point DomainBox::clamp(const Point& p) const {
    return {std::clamp(p.x, x_min, x_max), std::clamp(p.y, y_min, y_max)};
}

void DomainBox::validate() const {
    if (!(x_min < x_max) || !(y_min < y_max)) {
        throw ConfigError("DomainBox: requires x_min < x_max and y_min < y_max");
    }
}

FieldSpec FieldSpec::paper_sinusoid() {
    FieldSpec spec;
    spec.kind = FieldKind::AnalyticSinusoid;
    spec.box = DomainBox{0.0, 1.0, 0.0, 1.0};
    spec.freq_x = 1.0;
    spec.freq_y = 2.0;
    spec.g_min = -2.0;
    spec.g_max = 2.0;
    return spec;
}

namespace {

double eval_tabulated(const FieldSpec& spec, const Point& p) {
    const auto& tab = spec.table;
    const int g = tab.side_count;
    if (g < 2 || static_cast<int>(tab.values.size()) != g * g) {
        throw ConfigError("FieldSpec: tabulated grid not loaded");
    }
    const double dx = (spec.box.x_max - spec.box.x_min) / (g - 1);
    const double dy = (spec.box.y_max - spec.box.y_min) / (g - 1);
    double fx = (p.x - spec.box.x_min) / dx;
    double fy = (p.y - spec.box.y_min) / dy;
    int j = std::min(static_cast<int>(fx), g - 2);
    int k = std::min(static_cast<int>(fy), g - 2);
    const double u = fx - j;
    const double v = fy - k;
    auto val = [&](int jj, int kk) { return tab.values[jj * g + kk]; };
    // bilinear interpolation between the four surrounding samples
    return (1 - u) * (1 - v) * val(j, k) + u * (1 - v) * val(j + 1, k) +
           (1 - u) * v * val(j, k + 1) + u * v * val(j + 1, k + 1);
}

}  // namespace

double eval_field(const FieldSpec& spec, const Point& p) {
    if (!spec.box.contains(p)) {
        std::ostringstream oss;
        oss << "eval_field: point (" << p.x << ", " << p.y << ") outside domain box";
        throw DomainViolation(oss.str());
    }
    switch (spec.kind) {
        case FieldKind::AnalyticSinusoid:
            return std::sin(kTwoPi * spec.freq_x * p.x) + std::cos(kTwoPi * spec.freq_y * p.y);
        case FieldKind::SumOfGaussianBumps: {
            double sum = 0.0;
            for (const auto& b : spec.bumps) {
                sum += b.amplitude *
                       std::exp(-squared_distance(p, b.center) / (2.0 * b.sigma * b.sigma));
            }
            return sum;
        }
        case FieldKind::TabulatedGrid:
            return eval_tabulated(spec, p);
    }
    throw ConfigError("eval_field: unknown field kind");
}

TestGrid make_test_grid(const DomainBox& box, int side_count) {
    box.validate();
    if (side_count < 2) {
        throw ConfigError("make_test_grid: side_count must be >= 2");
    }
    TestGrid grid;
    grid.side_count = side_count;
    grid.box = box;
    grid.points.reserve(static_cast<std::size_t>(side_count) * side_count);
    const double dx = (box.x_max - box.x_min) / (side_count - 1);
    const double dy = (box.y_max - box.y_min) / (side_count - 1);
    for (int j = 0; j < side_count; ++j) {
        for (int k = 0; k < side_count; ++k) {
            grid.points.push_back({box.x_min + j * dx, box.y_min + k * dy});
        }
    }
    return grid;
}

bool in_true_high_intensity(const FieldSpec& spec, const Point& p, double g_thresh) {
    return eval_field(spec, p) > g_thresh;
}

std::vector<double> eval_field_on_grid(const FieldSpec& spec, const TestGrid& grid) {
    std::vector<double> out;
    out.reserve(grid.points.size());
    for (const auto& p : grid.points) {
        out.push_back(eval_field(spec, p));
    }
    return out;
}

std::string FieldSpec::to_json() const {
    nlohmann::json j;
    switch (kind) {
        case FieldKind::AnalyticSinusoid: j["kind"] = "analytic-sinusoid"; break;
        case FieldKind::SumOfGaussianBumps: j["kind"] = "sum-of-gaussian-bumps"; break;
        case FieldKind::TabulatedGrid: j["kind"] = "tabulated-grid"; break;
    }
    j["box"] = {{"x_min", box.x_min}, {"x_max", box.x_max},
                {"y_min", box.y_min}, {"y_max", box.y_max}};
    j["g_min"] = g_min;
    j["g_max"] = g_max;
    if (lipschitz_hint) j["lipschitz_hint"] = *lipschitz_hint;
    if (noise_sigma != 0.0) j["noise_sigma"] = noise_sigma;
    if (kind == FieldKind::AnalyticSinusoid) {
        j["freq_x"] = freq_x;
        j["freq_y"] = freq_y;
    } else if (kind == FieldKind::SumOfGaussianBumps) {
        auto arr = nlohmann::json::array();
        for (const auto& b : bumps) {
            arr.push_back({{"cx", b.center.x}, {"cy", b.center.y},
                           {"amplitude", b.amplitude}, {"sigma", b.sigma}});
        }
        j["bumps"] = arr;
    } else {
        j["side_count"] = table.side_count;
        j["values"] = table.values;
    }
    return j.dump(2);
}

FieldSpec FieldSpec::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("FieldSpec: invalid JSON: ") + e.what());
    }
    FieldSpec spec;
    const std::string kind = j.value("kind", "analytic-sinusoid");
    if (kind == "analytic-sinusoid") {
        spec.kind = FieldKind::AnalyticSinusoid;
        spec.freq_x = j.value("freq_x", 1.0);
        spec.freq_y = j.value("freq_y", 2.0);
    } else if (kind == "sum-of-gaussian-bumps") {
        spec.kind = FieldKind::SumOfGaussianBumps;
        for (const auto& b : j.value("bumps", nlohmann::json::array())) {
            spec.bumps.push_back({{b.at("cx").get<double>(), b.at("cy").get<double>()},
                                  b.value("amplitude", 1.0), b.value("sigma", 0.1)});
        }
    } else if (kind == "tabulated-grid") {
        spec.kind = FieldKind::TabulatedGrid;
        spec.table.side_count = j.at("side_count").get<int>();
        spec.table.values = j.at("values").get<std::vector<double>>();
    } else {
        throw ConfigError("FieldSpec: unknown kind '" + kind + "'");
    }
    if (j.contains("box")) {
        const auto& b = j["box"];
        spec.box = {b.value("x_min", 0.0), b.value("x_max", 1.0),
                    b.value("y_min", 0.0), b.value("y_max", 1.0)};
    }
    spec.box.validate();
    spec.g_min = j.value("g_min", -2.0);
    spec.g_max = j.value("g_max", 2.0);
    if (j.contains("lipschitz_hint")) spec.lipschitz_hint = j["lipschitz_hint"].get<double>();
    spec.noise_sigma = j.value("noise_sigma", 0.0);
    return spec;
}

TabulatedField FieldSpec::load_table_csv(const std::string& path, int side_count) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("load_table_csv: cannot open " + path);
    }
    TabulatedField tab;
    tab.side_count = side_count;
    tab.values.assign(static_cast<std::size_t>(side_count) * side_count, 0.0);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) continue;
        std::istringstream ls(line);
        double x, y, g;
        char comma;
        if (!(ls >> x >> comma >> y >> comma >> g)) {
            throw ConfigError("load_table_csv: malformed row '" + line + "'");
        }
        if (rows >= tab.values.size()) {
            throw ConfigError("load_table_csv: more rows than side_count^2");
        }
        tab.values[rows++] = g;  // rows arrive in grid order
    }
    if (rows != tab.values.size()) {
        throw ConfigError("load_table_csv: expected " + std::to_string(tab.values.size()) +
                          " rows, got " + std::to_string(rows));
    }
    return tab;
}

}  // namespace fieldmapper
