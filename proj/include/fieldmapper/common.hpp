#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace fieldmapper {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double squared_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(const Point& a, const Point& b) {
    return std::sqrt(squared_distance(a, b));
}

/// Raised when inputs violate a documented configuration constraint.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a point falls outside the domain box.
class DomainViolation : public std::runtime_error {
public:
    explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the Gram matrix is not positive definite even after jitter.
class SingularModelError : public std::runtime_error {
public:
    explicit SingularModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a scattered-data diagnostic is undefined for the input.
class UndefinedDiagnosticError : public std::runtime_error {
public:
    explicit UndefinedDiagnosticError(const std::string& what) : std::runtime_error(what) {}
};

using Rng = std::mt19937_64;

/// Derives a per-agent stream from the master seed keyed on the agent id so
/// adding or removing agents does not reshuffle existing agents' draws.
inline Rng make_agent_rng(std::uint64_t master_seed, std::uint64_t agent_id) {
    std::seed_seq seq{master_seed, agent_id + 1, std::uint64_t{0x9e3779b97f4a7c15ULL}};
    return Rng(seq);
}

}  // namespace fieldmapper
