#include "fieldmapper/hough.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fieldmapper {

BinaryMap binarize(const Eigen::VectorXd& mean, int side_count, double g_thresh) {
    if (mean.size() != static_cast<Eigen::Index>(side_count) * side_count) {
        throw ConfigError("binarize: mean length does not match side_count^2");
    }
    BinaryMap map;
    map.side_count = side_count;
    map.bits.resize(mean.size());
    for (Eigen::Index i = 0; i < mean.size(); ++i) {
        map.bits[i] = mean(i) > g_thresh ? 1 : 0;  // ties fall to 0
    }
    return map;
}

std::vector<GridIndex> boundary_pixels(const BinaryMap& map) {
    const int g = map.side_count;
    std::vector<GridIndex> out;
    auto zero_or_outside = [&](int j, int k) {
        return j < 0 || j >= g || k < 0 || k >= g || map.at(j, k) == 0;
    };
    for (int j = 0; j < g; ++j) {
        for (int k = 0; k < g; ++k) {
            if (map.at(j, k) == 0) continue;
            if (zero_or_outside(j - 1, k) || zero_or_outside(j + 1, k) ||
                zero_or_outside(j, k - 1) || zero_or_outside(j, k + 1)) {
                out.push_back({j, k});
            }
        }
    }
    return out;
}

namespace {

/// Integer offsets approximating a circle of radius rc cells (the cells a
/// midpoint rasterization of that circle would touch). A boundary whose true
/// radius falls between two quantized radii splits its votes across the two
/// planes, which still clears the sensitivity-1 floor.
std::vector<GridIndex> circle_offsets(int rc) {
    std::vector<GridIndex> offsets;
    const double lo = rc - 0.5;
    const double hi = rc + 0.5;
    for (int dj = -rc - 1; dj <= rc + 1; ++dj) {
        for (int dk = -rc - 1; dk <= rc + 1; ++dk) {
            const double d = std::sqrt(double(dj) * dj + double(dk) * dk);
            if (d >= lo && d < hi) {
                offsets.push_back({dj, dk});
            }
        }
    }
    return offsets;
}

struct Candidate {
    double score;
    int j;
    int k;
    int rc;
};

}  // namespace

CircleSet detect_circles(const BinaryMap& map, const HoughConfig& cfg, const TestGrid& grid) {
    cfg.validate();
    const int g = map.side_count;
    const double delta = grid.spacing();
    if (cfg.r_min < 2.0 * delta) {
        throw ConfigError("detect_circles: r_min below twice the grid spacing");
    }
    const double step = cfg.radius_step > 0.0 ? cfg.radius_step : delta;
    const int step_cells = std::max(1, static_cast<int>(std::lround(step / delta)));
    const int rc_min = static_cast<int>(std::ceil(cfg.r_min / delta - 1e-9));
    const int rc_max = static_cast<int>(std::floor(cfg.r_max / delta + 1e-9));

    const auto sources = boundary_pixels(map);
    const double floor_score = score_floor(cfg.sensitivity);
    std::vector<Candidate> candidates;
    std::vector<int> acc(static_cast<std::size_t>(g) * g);

    for (int rc = rc_min; rc <= rc_max; rc += step_cells) {
        std::fill(acc.begin(), acc.end(), 0);
        const auto offsets = circle_offsets(rc);
        for (const auto& px : sources) {
            for (const auto& off : offsets) {
                const int cj = px.j + off.j;
                const int ck = px.k + off.k;
                if (cj >= 0 && cj < g && ck >= 0 && ck < g) {
                    ++acc[cj * g + ck];
                }
            }
        }
        const double ideal = 2.0 * std::numbers::pi * rc;
        for (int j = 0; j < g; ++j) {
            for (int k = 0; k < g; ++k) {
                const int votes = acc[j * g + k];
                const double score = votes / ideal;
                if (score < floor_score) continue;
                bool local_max = true;
                for (int dj = -1; dj <= 1 && local_max; ++dj) {
                    for (int dk = -1; dk <= 1; ++dk) {
                        const int nj = j + dj, nk = k + dk;
                        if (nj < 0 || nj >= g || nk < 0 || nk >= g) continue;
                        if (acc[nj * g + nk] > votes) {
                            local_max = false;
                            break;
                        }
                    }
                }
                if (local_max) {
                    candidates.push_back({score, j, k, rc});
                }
            }
        }
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.rc != b.rc) return a.rc < b.rc;
        if (a.j != b.j) return a.j < b.j;
        return a.k < b.k;
    });

    // greedy non-max suppression at separation r_min
    CircleSet out;
    for (const auto& c : candidates) {
        const Point center{grid.box.x_min + c.j * delta, grid.box.y_min + c.k * delta};
        bool suppressed = false;
        for (const auto& kept : out.circles) {
            if (distance(center, {kept.cx, kept.cy}) < cfg.r_min) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) {
            out.circles.push_back({center.x, center.y, c.rc * delta});
            out.scores.push_back(c.score);
        }
    }
    return out;
}

bool point_in_circle(const Point& p, const Circle& c, double margin) {
    return distance(p, {c.cx, c.cy}) < c.r + margin;
}

bool point_in_any_circle(const Point& p, const CircleSet& circles, double margin) {
    for (const auto& c : circles.circles) {
        if (point_in_circle(p, c, margin)) return true;
    }
    return false;
}

void write_pgm(const std::string& path, const BinaryMap& map, int maxval) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("write_pgm: cannot open " + path);
    }
    const int g = map.side_count;
    out << "P2\n" << g << " " << g << "\n" << maxval << "\n";
    for (int j = 0; j < g; ++j) {
        for (int k = 0; k < g; ++k) {
            out << (map.at(j, k) ? maxval : 0) << (k + 1 == g ? '\n' : ' ');
        }
    }
}

void write_pgm_gray(const std::string& path, const Eigen::VectorXd& values, int side_count) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("write_pgm_gray: cannot open " + path);
    }
    const double lo = values.minCoeff();
    const double hi = values.maxCoeff();
    const double span = hi > lo ? hi - lo : 1.0;
    out << "P2\n" << side_count << " " << side_count << "\n255\n";
    for (int j = 0; j < side_count; ++j) {
        for (int k = 0; k < side_count; ++k) {
            const double v = values(j * side_count + k);
            const int px = static_cast<int>(std::lround(255.0 * (v - lo) / span));
            out << px << (k + 1 == side_count ? '\n' : ' ');
        }
    }
}

BinaryMap read_pgm(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("read_pgm: cannot open " + path);
    }
    std::string token;
    auto next_token = [&]() -> std::string {
        std::string t;
        while (in >> t) {
            if (t[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return t;
        }
        throw ConfigError("read_pgm: truncated file " + path);
    };
    if (next_token() != "P2") {
        throw ConfigError("read_pgm: only plain P2 images are supported");
    }
    const int width = std::stoi(next_token());
    const int height = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (width != height || width < 2 || maxval < 1) {
        throw ConfigError("read_pgm: expected a square P2 image with maxval >= 1");
    }
    BinaryMap map;
    map.side_count = width;
    map.bits.resize(static_cast<std::size_t>(width) * height);
    for (int j = 0; j < height; ++j) {
        for (int k = 0; k < width; ++k) {
            const int v = std::stoi(next_token());
            map.at(j, k) = v * 2 > maxval ? 1 : 0;
        }
    }
    return map;
}

}  // namespace fieldmapper
