#include "gevind/dynamics.hpp"

#include <cmath>

namespace gevind {

namespace {
constexpr double two_pi_d = 6.283185307179586476925286766559;
constexpr float two_pi_f = 6.28318530717958647692f;
}  // namespace

// Reduce to a quarter-turn neighbourhood before calling libm. The
// subtractions 0.5 - u (u in [0.25, 0.75]) and u - 1 (u in [0.75, 1)) are
// exact by Sterbenz's lemma, so the symmetry sin(2pi u) = sin(2pi(0.5-u))
// = sin(2pi(u-1)) holds exactly and half turns map to sin(0).
double sin_two_pi(double turns) {
    double u = wrap_unit(turns);
    if (u < 0.25) return std::sin(two_pi_d * u);
    if (u < 0.75) return std::sin(two_pi_d * (0.5 - u));
    return std::sin(two_pi_d * (u - 1.0));
}

float sin_two_pi(float turns) {
    float u = wrap_unit(turns);
    if (u < 0.25f) return std::sin(two_pi_f * u);
    if (u < 0.75f) return std::sin(two_pi_f * (0.5f - u));
    return std::sin(two_pi_f * (u - 1.0f));
}

namespace {

inline TorusPoint step_double(TorusPoint p, double K) {
    double y = wrap_unit(p.y - (K / two_pi_d) * sin_two_pi(p.x));
    double x = wrap_unit(p.x + y);
    return {x, y};
}

inline TorusPoint inverse_step_double(TorusPoint p, double K) {
    double x = wrap_unit(p.x - p.y);
    double y = wrap_unit(p.y + (K / two_pi_d) * sin_two_pi(x));
    return {x, y};
}

inline TorusPoint step_single(TorusPoint p, double K) {
    const float Kf = static_cast<float>(K);
    float y = wrap_unit(static_cast<float>(p.y) -
                        (Kf / two_pi_f) * sin_two_pi(static_cast<float>(p.x)));
    float x = wrap_unit(static_cast<float>(p.x) + y);
    return {static_cast<double>(x), static_cast<double>(y)};
}

inline TorusPoint inverse_step_single(TorusPoint p, double K) {
    const float Kf = static_cast<float>(K);
    float x = wrap_unit(static_cast<float>(p.x) - static_cast<float>(p.y));
    float y = wrap_unit(static_cast<float>(p.y) + (Kf / two_pi_f) * sin_two_pi(x));
    return {static_cast<double>(x), static_cast<double>(y)};
}

}  // namespace

TorusPoint standard_map_step(TorusPoint p, StandardMapParams params, Precision prec) {
    return prec == Precision::Double ? step_double(p, params.K) : step_single(p, params.K);
}

TorusPoint standard_map_inverse_step(TorusPoint p, StandardMapParams params, Precision prec) {
    return prec == Precision::Double ? inverse_step_double(p, params.K)
                                     : inverse_step_single(p, params.K);
}

double torus_distance(TorusPoint a, TorusPoint b) {
    double dx = std::fabs(a.x - b.x);
    if (dx > 0.5) dx = 1.0 - dx;
    double dy = std::fabs(a.y - b.y);
    if (dy > 0.5) dy = 1.0 - dy;
    return std::sqrt(dx * dx + dy * dy);
}

MapSystem make_standard_map(StandardMapParams params, Precision prec) {
    MapSystem map;
    const double K = params.K;
    if (prec == Precision::Double) {
        map.forward = [K](TorusPoint p) { return step_double(p, K); };
        map.inverse = [K](TorusPoint p) { return inverse_step_double(p, K); };
    } else {
        map.forward = [K](TorusPoint p) { return step_single(p, K); };
        map.inverse = [K](TorusPoint p) { return inverse_step_single(p, K); };
    }
    map.metric = [](TorusPoint a, TorusPoint b) { return torus_distance(a, b); };
    map.dimension = 2;
    return map;
}

std::vector<TorusPoint> iterate(TorusPoint p0, StandardMapParams params, Precision prec,
                                std::size_t steps, Direction direction,
                                std::size_t max_points) {
    if (steps > max_points) throw OrbitBudgetError(steps, max_points);
    std::vector<TorusPoint> orbit;
    orbit.reserve(steps);
    for_each_orbit_point(make_standard_map(params, prec), p0, steps, direction,
                         [&orbit](TorusPoint p) { orbit.push_back(p); });
    return orbit;
}

}  // namespace gevind
