#pragma once

#include <cstddef>

#include "gevind/dynamics.hpp"

namespace gevind {

/// Round-off reference indicators at iteration count t. Both live in
/// [0, sqrt(2)/2], the torus diameter.
struct RoundoffResult {
    std::size_t t = 0;
    double divergence = 0.0;      // dist(f_S^t(p0), f_D^t(p0))
    double reversibility = 0.0;   // dist(f_S^-t(f_S^t(p0)), p0)
};

/// Distance at time t between the single- and double-precision orbits of
/// the same initial condition.
double divergence(const MapSystem& single_prec, const MapSystem& double_prec,
                  TorusPoint p0, std::size_t t);
double divergence(TorusPoint p0, StandardMapParams params, std::size_t t);

/// Distance between p0 and its image under t forward then t backward
/// numerical steps. The working map is the single-precision one (so the
/// values are comparable with the divergence). Throws NoInverseError when
/// the map has no inverse step.
double reversibility_error(const MapSystem& map, TorusPoint p0, std::size_t t);
double reversibility_error(TorusPoint p0, StandardMapParams params, std::size_t t);

RoundoffResult roundoff_indicators(TorusPoint p0, StandardMapParams params, std::size_t t);

}  // namespace gevind
