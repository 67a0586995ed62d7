#include <doctest.h>

#include <cmath>

#include "gevind/dynamics.hpp"
#include "gevind/rng.hpp"
#include "oracles.hpp"

using namespace gevind;

namespace {
constexpr double pi = 3.14159265358979323846;

TorusPoint random_point(std::mt19937_64& eng) {
    return {uniform01(eng), uniform01(eng)};
}
}  // namespace

TEST_CASE("standard map hand examples") {
    SUBCASE("(0.5, 0) is an exact fixed point for any K") {
        for (double K : {0.0, 1.0, 6.5, 7.3, 100.0}) {
            const TorusPoint q = standard_map_step({0.5, 0.0}, {K});
            CHECK(q.x == 0.5);
            CHECK(q.y == 0.0);
            const TorusPoint qs = standard_map_step({0.5, 0.0}, {K}, Precision::Single);
            CHECK(qs.x == 0.5);
            CHECK(qs.y == 0.0);
        }
    }
    SUBCASE("K = 0 is a pure shear") {
        const TorusPoint q = standard_map_step({0.25, 0.25}, {0.0});
        CHECK(q.x == 0.5);
        CHECK(q.y == 0.25);
    }
    SUBCASE("K = pi kicks (0.25, 0.5) to rest") {
        const TorusPoint q = standard_map_step({0.25, 0.5}, {pi});
        CHECK(q.x == 0.25);
        CHECK(q.y == 0.0);
    }
}

TEST_CASE("inverse step hand examples") {
    SUBCASE("undo shear") {
        const TorusPoint q = standard_map_inverse_step({0.5, 0.25}, {0.0});
        CHECK(q.x == 0.25);
        CHECK(q.y == 0.25);
    }
    SUBCASE("inverts the K = pi example") {
        const TorusPoint q = standard_map_inverse_step({0.25, 0.0}, {pi});
        CHECK(q.x == 0.25);
        CHECK(q.y == 0.5);
    }
    SUBCASE("round trip at K = 6.5") {
        const TorusPoint p{0.3, 0.7};
        const TorusPoint back =
            standard_map_inverse_step(standard_map_step(p, {6.5}), {6.5});
        CHECK(torus_distance(back, p) <= 1e-12);
    }
}

TEST_CASE("forward/inverse round trip over random points and K") {
    auto eng = make_engine(42);
    for (int i = 0; i < 1000; ++i) {
        const TorusPoint p = random_point(eng);
        const StandardMapParams params{uniform01(eng) * 10.0};
        const TorusPoint back =
            standard_map_inverse_step(standard_map_step(p, params), params);
        CHECK(torus_distance(back, p) <= 1e-12);
    }
}

TEST_CASE("area preservation: |det J - 1| <= 1e-8 at 1000 random points") {
    auto eng = make_engine(7);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const TorusPoint p = random_point(eng);
        const StandardMapParams params{uniform01(eng) * 10.0};
        worst = std::max(worst, std::fabs(oracles::numeric_jacobian_det(p, params) - 1.0));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("torus distance") {
    CHECK(torus_distance({0.3, 0.8}, {0.3, 0.8}) == 0.0);
    CHECK(torus_distance({0.1, 0.1}, {0.9, 0.1}) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(torus_distance({0.0, 0.0}, {0.5, 0.5}) == std::sqrt(0.5));

    SUBCASE("metric axioms on random triples") {
        auto eng = make_engine(11);
        for (int i = 0; i < 2000; ++i) {
            const TorusPoint a = random_point(eng), b = random_point(eng), c = random_point(eng);
            const double ab = torus_distance(a, b);
            CHECK(ab == torus_distance(b, a));
            CHECK(ab >= 0.0);
            CHECK(ab <= std::sqrt(0.5) + 1e-15);
            CHECK(ab <= torus_distance(a, c) + torus_distance(c, b) + 1e-12);
        }
    }
}

TEST_CASE("wrap_unit folds the rounding edge") {
    CHECK(wrap_unit(-1e-17) == 0.0);  // v - floor(v) rounds to 1.0 here
    CHECK(wrap_unit(1.0) == 0.0);
    CHECK(wrap_unit(-0.25) == 0.75);
    CHECK(wrap_unit(2.5) == 0.5);
    CHECK(wrap_unit(-1e-9f) >= 0.0f);
    CHECK(wrap_unit(-1e-9f) < 1.0f);
}

TEST_CASE("iterate") {
    SUBCASE("fixed point stays put for 100 steps") {
        const auto orbit = iterate({0.5, 0.0}, {1.0}, Precision::Double, 100);
        REQUIRE(orbit.size() == 100);
        for (const TorusPoint& p : orbit) {
            CHECK(p.x == 0.5);
            CHECK(p.y == 0.0);
        }
    }
    SUBCASE("K = 0 arithmetic progression") {
        const auto orbit = iterate({0.1, 0.2}, {0.0}, Precision::Double, 3);
        REQUIRE(orbit.size() == 3);
        CHECK(orbit[0].x == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(orbit[1].x == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(orbit[2].x == doctest::Approx(0.7).epsilon(1e-12));
    }
    SUBCASE("10^6 chaotic steps keep the invariants") {
        const MapSystem map = make_standard_map({6.5}, Precision::Double);
        std::size_t bad = 0;
        for_each_orbit_point(map, {0.305, 0.7340}, 1000000, Direction::Forward,
                             [&](TorusPoint p) {
                                 if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0))
                                     ++bad;
                             });
        CHECK(bad == 0);
    }
    SUBCASE("budget error on oversized materialization") {
        CHECK_THROWS_AS(iterate({0.1, 0.2}, {1.0}, Precision::Double, 101,
                                Direction::Forward, /*max_points=*/100),
                        OrbitBudgetError);
    }
    SUBCASE("backward orbit undoes the forward one") {
        const MapSystem map = make_standard_map({4.5}, Precision::Double);
        const TorusPoint p{0.11, 0.37};
        TorusPoint end = p;
        for_each_orbit_point(map, p, 50, Direction::Forward, [&](TorusPoint q) { end = q; });
        TorusPoint back = end;
        for_each_orbit_point(map, end, 50, Direction::Backward,
                             [&](TorusPoint q) { back = q; });
        CHECK(torus_distance(back, p) <= 1e-10);
    }
    SUBCASE("backward without an inverse throws") {
        MapSystem map = make_standard_map({1.0}, Precision::Double);
        map.inverse = nullptr;
        CHECK_THROWS_AS(
            for_each_orbit_point(map, {0.1, 0.1}, 1, Direction::Backward, [](TorusPoint) {}),
            NoInverseError);
    }
}

TEST_CASE("single and double precision orbits diverge for K >= 5") {
    for (double K : {5.0, 6.5, 10.0}) {
        const MapSystem ms = make_standard_map({K}, Precision::Single);
        const MapSystem md = make_standard_map({K}, Precision::Double);
        TorusPoint ps{0.305, 0.7340}, pd{0.305, 0.7340};
        bool diverged = false;
        for (int t = 0; t < 200 && !diverged; ++t) {
            ps = ms.forward(ps);
            pd = md.forward(pd);
            diverged = torus_distance(ps, pd) > 0.01;
        }
        CHECK(diverged);
    }
}

TEST_CASE("single precision carries 32-bit state") {
    // every coordinate of a single-precision orbit is exactly representable
    // as a float
    const auto orbit = iterate({0.305, 0.7340}, {6.5}, Precision::Single, 500);
    for (const TorusPoint& p : orbit) {
        CHECK(static_cast<double>(static_cast<float>(p.x)) == p.x);
        CHECK(static_cast<double>(static_cast<float>(p.y)) == p.y);
    }
}
