#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "gevind/records.hpp"
#include "gevind/rng.hpp"

using namespace gevind;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / name;
}

IndicatorRecord make_record(std::mt19937_64& eng, bool with_roundoff) {
    IndicatorRecord r;
    r.ic = {uniform01(eng), uniform01(eng)};
    r.K = uniform01(eng) * 100.0;
    const BlockSpec blocks = BlockSpec::from_bins(100, 1000);
    int which = 0;
    for (ObservableKind kind : {ObservableKind::G1, ObservableKind::G2, ObservableKind::G3}) {
        ObservableResult o;
        o.kind = kind;
        o.target = theoretical_params(kind, 2.0, 3.0, blocks, 0.25);
        o.exact_returns = static_cast<std::size_t>(uniform01(eng) * 5);
        switch (which++ % 3) {
            case 0: {
                FitResult f;
                f.params = {uniform01(eng) * 4 - 2, uniform01(eng) + 0.1,
                            uniform01(eng) * 0.6 - 0.3};
                f.mu_ci = {f.params.mu - 0.1, f.params.mu + 0.1};
                f.sigma_ci = {f.params.sigma * 0.9, f.params.sigma * 1.1};
                f.xi_ci = {f.params.xi - 0.05, f.params.xi + 1e-17};
                f.sample_size = 100;
                f.bootstrap_reps = 200;
                f.failed_replicate_fraction = uniform01(eng) * 0.25;
                f.kind = kind;
                o.fit = f;
                o.deviation = deviation_score(f, o.target);
                o.outcome = FitOutcome::Ok;
                break;
            }
            case 1:
                o.outcome = FitOutcome::Degenerate;
                break;
            case 2:
                o.outcome = FitOutcome::DomainError;
                break;
        }
        r.observables.push_back(std::move(o));
    }
    if (with_roundoff) {
        r.divergence = uniform01(eng);
        r.reversibility = uniform01(eng) * 1e-7;  // exercises exponent formatting
    }
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("records round trip") {
    auto eng = make_engine(31);
    std::vector<IndicatorRecord> records;
    for (int i = 0; i < 100; ++i) records.push_back(make_record(eng, i % 4 != 0));

    const fs::path p1 = temp_file("gevind_records_a.csv");
    const fs::path p2 = temp_file("gevind_records_b.csv");
    write_records(records, p1);
    const std::vector<IndicatorRecord> parsed = read_records(p1);
    REQUIRE(parsed.size() == records.size());
    write_records(parsed, p2);

    SUBCASE("write -> read -> write is a byte-level fixpoint") {
        CHECK(slurp(p1) == slurp(p2));
    }

    SUBCASE("numeric fields survive exactly") {
        for (std::size_t i = 0; i < records.size(); ++i) {
            const IndicatorRecord &a = records[i], &b = parsed[i];
            CHECK(a.ic.x == b.ic.x);
            CHECK(a.ic.y == b.ic.y);
            CHECK(a.K == b.K);
            CHECK(a.divergence == b.divergence);
            CHECK(a.reversibility == b.reversibility);
            REQUIRE(a.observables.size() == b.observables.size());
            for (std::size_t j = 0; j < a.observables.size(); ++j) {
                const ObservableResult &oa = a.observables[j], &ob = b.observables[j];
                CHECK(oa.kind == ob.kind);
                CHECK(oa.outcome == ob.outcome);
                CHECK(oa.exact_returns == ob.exact_returns);
                CHECK(oa.fit.has_value() == ob.fit.has_value());
                if (oa.fit) {
                    CHECK(oa.fit->params.mu == ob.fit->params.mu);
                    CHECK(oa.fit->params.sigma == ob.fit->params.sigma);
                    CHECK(oa.fit->params.xi == ob.fit->params.xi);
                    CHECK(oa.fit->xi_ci.lower == ob.fit->xi_ci.lower);
                    CHECK(oa.fit->xi_ci.upper == ob.fit->xi_ci.upper);
                    CHECK(oa.fit->failed_replicate_fraction ==
                          ob.fit->failed_replicate_fraction);
                }
                CHECK(oa.target.expected.xi == ob.target.expected.xi);
                CHECK(oa.target.mu_comparable == ob.target.mu_comparable);
                CHECK(oa.target.sigma_comparable == ob.target.sigma_comparable);
                if (oa.deviation) {
                    REQUIRE(ob.deviation.has_value());
                    CHECK(oa.deviation->xi == ob.deviation->xi);
                    CHECK(oa.deviation->sigma == ob.deviation->sigma);
                    CHECK(oa.deviation->mu == ob.deviation->mu);
                }
            }
        }
    }
    fs::remove(p1);
    fs::remove(p2);
}

TEST_CASE("empty record list writes a header-only table") {
    const fs::path p = temp_file("gevind_records_empty.csv");
    write_records({}, p);
    const std::string content = slurp(p);
    CHECK(content.find('\n') == content.size() - 1);  // single line
    CHECK(read_records(p).empty());
    fs::remove(p);
}

TEST_CASE("io errors carry the path") {
    const fs::path bogus = "/definitely/not/a/dir/records.csv";
    CHECK_THROWS_WITH_AS(write_records({}, bogus),
                         doctest::Contains("/definitely/not/a/dir/records.csv"), IoError);
    CHECK_THROWS_AS(read_records(bogus), IoError);
}

TEST_CASE("record_field") {
    auto eng = make_engine(55);
    IndicatorRecord r = make_record(eng, true);

    CHECK(record_field(r, "xi_g1") == r.observables[0].fit->params.xi);
    CHECK(record_field(r, "sigma_g1") == r.observables[0].fit->params.sigma);
    CHECK(std::isnan(record_field(r, "xi_g2")));  // degenerate cell
    CHECK(record_field(r, "dev_xi_g1") == r.observables[0].deviation->xi);
    CHECK(record_field(r, "divergence") == *r.divergence);
    CHECK(record_field(r, "log10_div") ==
          std::log10(std::max(*r.divergence, 1e-16)));
    CHECK(record_field(r, "exact_returns_g3") ==
          static_cast<double>(r.observables[2].exact_returns));
    CHECK_THROWS_AS(record_field(r, "nope_g1"), std::invalid_argument);
    CHECK_THROWS_AS(record_field(r, "xi_g9"), std::invalid_argument);

    SUBCASE("log display floor applies to zero values") {
        r.reversibility = 0.0;
        CHECK(record_field(r, "log10_R") == -16.0);
        CHECK(record_field(r, "reversibility") == 0.0);
    }
    SUBCASE("missing roundoff turns into NaN") {
        r.divergence.reset();
        CHECK(std::isnan(record_field(r, "log10_div")));
    }
}

namespace {

std::vector<std::array<int, 3>> parse_p3(const fs::path& path, std::size_t& w, std::size_t& h) {
    std::ifstream in(path);
    std::string magic;
    int maxval = 0;
    REQUIRE(static_cast<bool>(in >> magic >> w >> h >> maxval));
    REQUIRE(magic == "P3");
    REQUIRE(maxval == 255);
    std::vector<std::array<int, 3>> px(w * h);
    for (auto& p : px) REQUIRE(static_cast<bool>(in >> p[0] >> p[1] >> p[2]));
    return px;
}

}  // namespace

TEST_CASE("heatmaps") {
    SUBCASE("two distinct values give exactly two colors") {
        const fs::path p = temp_file("gevind_map_two.ppm");
        render_heatmap(std::vector<double>{0.0, 1.0, 1.0, 0.0}, 2, 2, p);
        std::size_t w = 0, h = 0;
        const auto px = parse_p3(p, w, h);
        CHECK(w == 2);
        CHECK(h == 2);
        std::set<std::array<int, 3>> colors(px.begin(), px.end());
        CHECK(colors.size() == 2);
        CHECK(colors.count({0, 0, 0}) == 1);
        CHECK(colors.count({255, 255, 255}) == 1);
        fs::remove(p);
    }
    SUBCASE("non-finite cells use the reserved color") {
        const fs::path p = temp_file("gevind_map_nan.ppm");
        const double nan = std::numeric_limits<double>::quiet_NaN();
        render_heatmap(std::vector<double>{0.0, nan, 2.0, 1.0}, 2, 2, p);
        std::size_t w = 0, h = 0;
        const auto px = parse_p3(p, w, h);
        CHECK(std::count(px.begin(), px.end(), std::array<int, 3>{255, 0, 0}) == 1);
        fs::remove(p);
    }
    SUBCASE("row 0 is rendered at the bottom") {
        const fs::path p = temp_file("gevind_map_rows.ppm");
        render_heatmap(std::vector<double>{0.0, 0.0, 1.0, 1.0}, 2, 2, p);  // top row bright
        std::size_t w = 0, h = 0;
        const auto px = parse_p3(p, w, h);
        CHECK(px[0] == std::array<int, 3>{255, 255, 255});  // image row 0 = grid row 1
        CHECK(px[2] == std::array<int, 3>{0, 0, 0});
        fs::remove(p);
    }
    SUBCASE("constant field renders without dividing by zero") {
        const fs::path p = temp_file("gevind_map_const.ppm");
        render_heatmap(std::vector<double>(9, 3.3), 3, 3, p);
        std::size_t w = 0, h = 0;
        const auto px = parse_p3(p, w, h);
        for (const auto& c : px) CHECK(c == std::array<int, 3>{0, 0, 0});
        fs::remove(p);
    }
    SUBCASE("size mismatch throws") {
        CHECK_THROWS_AS(render_heatmap(std::vector<double>{1.0, 2.0}, 2, 2, temp_file("x.ppm")),
                        std::invalid_argument);
    }
}
