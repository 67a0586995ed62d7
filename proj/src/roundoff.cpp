#include "gevind/roundoff.hpp"

namespace gevind {

double divergence(const MapSystem& single_prec, const MapSystem& double_prec,
                  TorusPoint p0, std::size_t t) {
    TorusPoint ps = p0, pd = p0;
    for (std::size_t i = 0; i < t; ++i) {
        ps = single_prec.forward(ps);
        pd = double_prec.forward(pd);
    }
    return double_prec.metric(ps, pd);
}

double divergence(TorusPoint p0, StandardMapParams params, std::size_t t) {
    return divergence(make_standard_map(params, Precision::Single),
                      make_standard_map(params, Precision::Double), p0, t);
}

double reversibility_error(const MapSystem& map, TorusPoint p0, std::size_t t) {
    if (!map.has_inverse()) throw NoInverseError{};
    TorusPoint p = p0;
    for (std::size_t i = 0; i < t; ++i) p = map.forward(p);
    for (std::size_t i = 0; i < t; ++i) p = map.inverse(p);
    return map.metric(p, p0);
}

double reversibility_error(TorusPoint p0, StandardMapParams params, std::size_t t) {
    return reversibility_error(make_standard_map(params, Precision::Single), p0, t);
}

RoundoffResult roundoff_indicators(TorusPoint p0, StandardMapParams params, std::size_t t) {
    return {t, divergence(p0, params, t), reversibility_error(p0, params, t)};
}

}  // namespace gevind
