#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace gevind {

/// A state on the unit 2-torus [0,1)^2. x is the angular position,
/// y the angular momentum of the kicked rotator.
struct TorusPoint {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(const TorusPoint& a, const TorusPoint& b) {
    return a.x == b.x && a.y == b.y;
}

/// Kick strength of the standard map. Regular motion for K << 1, chaotic
/// sea with islands for K >~ 1.
struct StandardMapParams {
    double K = 0.0;
};

/// Arithmetic width used for every operation of a map step: Single carries
/// 32-bit state and performs the whole step (multiply, sine, add, mod) in
/// 32-bit arithmetic; Double uses 64-bit throughout.
enum class Precision { Single, Double };

enum class Direction { Forward, Backward };

/// sin(2*pi*turns) with quadrant reduction performed exactly in turn space,
/// so that half-turn multiples give exact zeros and quarter turns exact +-1.
/// Plain sin(2*pi*x) misses the zeros by ~1e-16 and a hyperbolic fixed
/// point then drifts off within a few iterations.
double sin_two_pi(double turns);
float sin_two_pi(float turns);

/// Reduce v into [0, 1): v - floor(v), with the result of exactly 1.0
/// (possible for tiny negative v after rounding) folded back to 0.
inline double wrap_unit(double v) {
    v -= std::floor(v);
    return v < 1.0 ? v : v - 1.0;
}
inline float wrap_unit(float v) {
    v -= std::floor(v);
    return v < 1.0f ? v : v - 1.0f;
}

/// One forward step of the standard map:
///   y' = y - (K/2pi) sin(2pi x)  (mod 1)
///   x' = x + y'                  (mod 1)
TorusPoint standard_map_step(TorusPoint p, StandardMapParams params,
                             Precision prec = Precision::Double);

/// Algebraic inverse of the forward step:
///   x0 = x - y              (mod 1)
///   y0 = y + (K/2pi) sin(2pi x0)  (mod 1)
TorusPoint standard_map_inverse_step(TorusPoint p, StandardMapParams params,
                                     Precision prec = Precision::Double);

/// Euclidean distance with per-coordinate wraparound,
/// d_i = min(|a_i - b_i|, 1 - |a_i - b_i|). Range [0, sqrt(2)/2].
double torus_distance(TorusPoint a, TorusPoint b);

/// A discrete-time system as the downstream modules see it: a forward step,
/// an optional inverse step, the metric of the state space, and the state
/// dimension. The standard map is the only built-in; everything above the
/// dynamics layer depends only on this.
struct MapSystem {
    std::function<TorusPoint(TorusPoint)> forward;
    std::function<TorusPoint(TorusPoint)> inverse;  // empty when not invertible
    std::function<double(TorusPoint, TorusPoint)> metric;
    int dimension = 2;

    bool has_inverse() const { return static_cast<bool>(inverse); }
};

/// Thrown when a backward orbit is requested from a map without an inverse.
struct NoInverseError : std::runtime_error {
    NoInverseError() : std::runtime_error("map does not expose an inverse step") {}
};

/// Thrown when a materialized orbit would exceed the memory budget.
struct OrbitBudgetError : std::runtime_error {
    explicit OrbitBudgetError(std::size_t steps, std::size_t budget)
        : std::runtime_error("orbit of " + std::to_string(steps) +
                             " points exceeds the memory budget of " +
                             std::to_string(budget) +
                             " (use the streaming form)") {}
};

MapSystem make_standard_map(StandardMapParams params, Precision prec);

/// Visit p_1 .. p_steps of the orbit of p0 (p0 itself is not visited).
/// Backward direction uses the inverse step and requires one.
template <class Visitor>
void for_each_orbit_point(const MapSystem& map, TorusPoint p0, std::size_t steps,
                          Direction direction, Visitor&& visit) {
    if (direction == Direction::Backward && !map.has_inverse())
        throw NoInverseError{};
    const auto& step = direction == Direction::Forward ? map.forward : map.inverse;
    TorusPoint p = p0;
    for (std::size_t t = 0; t < steps; ++t) {
        p = step(p);
        visit(p);
    }
}

/// Default cap on materialized orbit length (~1 GiB of points).
inline constexpr std::size_t default_orbit_budget = std::size_t{1} << 26;

/// Materialized orbit p_1 .. p_steps. Throws OrbitBudgetError when steps
/// exceeds max_points; use for_each_orbit_point to stream longer orbits.
std::vector<TorusPoint> iterate(TorusPoint p0, StandardMapParams params, Precision prec,
                                std::size_t steps, Direction direction = Direction::Forward,
                                std::size_t max_points = default_orbit_budget);

}  // namespace gevind
