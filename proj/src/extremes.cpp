#include "gevind/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gevind {

const char* observable_name(ObservableKind kind) {
    switch (kind) {
        case ObservableKind::G1: return "g1";
        case ObservableKind::G2: return "g2";
        case ObservableKind::G3: return "g3";
    }
    return "?";
}

std::optional<ObservableKind> observable_from_name(std::string_view name) {
    if (name == "g1") return ObservableKind::G1;
    if (name == "g2") return ObservableKind::G2;
    if (name == "g3") return ObservableKind::G3;
    return std::nullopt;
}

void ObservableSpec::validate() const {
    if (!(alpha > 0.0))
        throw std::invalid_argument("observable alpha must be > 0");
    if (!(distance_floor > 0.0) || distance_floor > 1e-10)
        throw std::invalid_argument("distance_floor must be in (0, 1e-10]");
    if (!std::isfinite(c))
        throw std::invalid_argument("observable constant c must be finite");
}

void BlockSpec::validate() const {
    if (n < 1 || m < 1)
        throw std::invalid_argument("block spec needs n >= 1 and m >= 1");
    if (k != n * m)
        throw std::invalid_argument("block spec requires k = n*m (k=" + std::to_string(k) +
                                    ", n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
}

double observable_value(const ObservableSpec& spec, double distance) {
    switch (spec.kind) {
        case ObservableKind::G1: return -std::log(distance);
        case ObservableKind::G2: return std::pow(distance, -1.0 / spec.alpha);
        case ObservableKind::G3: return spec.c - std::pow(distance, 1.0 / spec.alpha);
    }
    return 0.0;
}

ObservableSeries observable_series(std::span<const TorusPoint> orbit, TorusPoint zeta,
                                   const ObservableSpec& spec) {
    spec.validate();
    ObservableSeries out;
    out.kind = spec.kind;
    out.values.reserve(orbit.size());
    for (const TorusPoint& p : orbit) {
        double d = torus_distance(p, zeta);
        if (d < spec.distance_floor) {
            d = spec.distance_floor;
            ++out.clamped;
        }
        out.values.push_back(observable_value(spec, d));
    }
    return out;
}

namespace {

std::vector<double> bin_maxima_impl(std::span<const double> series, const BlockSpec& blocks) {
    blocks.validate();
    if (series.size() < blocks.k)
        throw std::length_error("series of " + std::to_string(series.size()) +
                                " values is shorter than k=" + std::to_string(blocks.k));
    std::vector<double> maxima(blocks.n);
    for (std::size_t j = 0; j < blocks.n; ++j) {
        const double* bin = series.data() + j * blocks.m;
        maxima[j] = *std::max_element(bin, bin + blocks.m);
    }
    return maxima;
}

}  // namespace

MaximaSeries block_maxima(std::span<const double> series, const BlockSpec& blocks) {
    return {bin_maxima_impl(series, blocks), 0, std::nullopt};
}

MaximaSeries block_maxima(const ObservableSeries& series, const BlockSpec& blocks) {
    return {bin_maxima_impl(series.values, blocks), series.clamped, series.kind};
}

std::vector<double> min_distance_series(std::span<const TorusPoint> orbit, TorusPoint zeta,
                                        const BlockSpec& blocks) {
    blocks.validate();
    if (orbit.size() < blocks.k)
        throw std::length_error("orbit of " + std::to_string(orbit.size()) +
                                " points is shorter than k=" + std::to_string(blocks.k));
    std::vector<double> minima(blocks.n);
    for (std::size_t j = 0; j < blocks.n; ++j) {
        double dmin = torus_distance(orbit[j * blocks.m], zeta);
        for (std::size_t i = 1; i < blocks.m; ++i)
            dmin = std::min(dmin, torus_distance(orbit[j * blocks.m + i], zeta));
        minima[j] = dmin;
    }
    return minima;
}

BinMinimaResult orbit_bin_minima(const MapSystem& map, TorusPoint zeta,
                                 const BlockSpec& blocks, double distance_floor) {
    blocks.validate();
    BinMinimaResult out;
    out.bin_min_distance.resize(blocks.n);
    TorusPoint p = zeta;
    for (std::size_t j = 0; j < blocks.n; ++j) {
        double dmin = 1e300;
        for (std::size_t i = 0; i < blocks.m; ++i) {
            p = map.forward(p);
            double d = map.metric(p, zeta);
            if (d < distance_floor) {
                d = distance_floor;
                ++out.clamped;
            }
            if (d < dmin) dmin = d;
        }
        out.bin_min_distance[j] = dmin;
    }
    return out;
}

MaximaSeries maxima_from_bin_minima(const BinMinimaResult& minima, const ObservableSpec& spec) {
    spec.validate();
    MaximaSeries out;
    out.kind = spec.kind;
    out.exact_return_count = minima.clamped;
    out.values.reserve(minima.bin_min_distance.size());
    for (double d : minima.bin_min_distance)
        out.values.push_back(observable_value(spec, std::max(d, spec.distance_floor)));
    return out;
}

}  // namespace gevind
