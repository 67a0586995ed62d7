#include "gevind/records.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

namespace gevind {

const char* fit_outcome_name(FitOutcome o) {
    switch (o) {
        case FitOutcome::Ok: return "ok";
        case FitOutcome::Degenerate: return "degenerate";
        case FitOutcome::DomainError: return "domain_error";
    }
    return "?";
}

std::optional<FitOutcome> fit_outcome_from_name(std::string_view name) {
    if (name == "ok") return FitOutcome::Ok;
    if (name == "degenerate") return FitOutcome::Degenerate;
    if (name == "domain_error") return FitOutcome::DomainError;
    return std::nullopt;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_opt(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

std::string format_opt_bool(const std::optional<bool>& v) {
    return v ? (*v ? "1" : "0") : std::string{};
}

// per-observable column suffixes, in writing order
const char* const obs_columns[] = {
    "status", "exact_returns", "sample_n", "boot_reps", "boot_fail",
    "mu", "sigma", "xi",
    "mu_lo", "mu_hi", "sigma_lo", "sigma_hi", "xi_lo", "xi_hi",
    "d", "alpha", "blocks_k", "blocks_n",
    "theory_mu", "theory_sigma", "theory_xi",
    "dev_mu", "dev_sigma", "dev_xi",
    "mu_in_ci", "sigma_in_ci", "xi_in_ci",
};

void append_observable_cells(std::vector<std::string>& cells, const ObservableResult& o) {
    cells.emplace_back(fit_outcome_name(o.outcome));
    cells.emplace_back(std::to_string(o.exact_returns));
    if (o.fit) {
        const FitResult& f = *o.fit;
        cells.emplace_back(std::to_string(f.sample_size));
        cells.emplace_back(std::to_string(f.bootstrap_reps));
        cells.emplace_back(format_double(f.failed_replicate_fraction));
        cells.emplace_back(format_double(f.params.mu));
        cells.emplace_back(format_double(f.params.sigma));
        cells.emplace_back(format_double(f.params.xi));
        cells.emplace_back(format_double(f.mu_ci.lower));
        cells.emplace_back(format_double(f.mu_ci.upper));
        cells.emplace_back(format_double(f.sigma_ci.lower));
        cells.emplace_back(format_double(f.sigma_ci.upper));
        cells.emplace_back(format_double(f.xi_ci.lower));
        cells.emplace_back(format_double(f.xi_ci.upper));
    } else {
        for (int i = 0; i < 12; ++i) cells.emplace_back();
    }
    const TheoreticalTarget& t = o.target;
    cells.emplace_back(format_double(t.d));
    cells.emplace_back(format_double(t.alpha));
    cells.emplace_back(std::to_string(t.k));
    cells.emplace_back(std::to_string(t.n));
    cells.emplace_back(t.mu_comparable ? format_double(t.expected.mu) : std::string{});
    cells.emplace_back(t.sigma_comparable ? format_double(t.expected.sigma) : std::string{});
    cells.emplace_back(format_double(t.expected.xi));
    if (o.deviation) {
        cells.emplace_back(format_opt(o.deviation->mu));
        cells.emplace_back(format_opt(o.deviation->sigma));
        cells.emplace_back(format_double(o.deviation->xi));
        cells.emplace_back(format_opt_bool(o.deviation->mu_in_ci));
        cells.emplace_back(format_opt_bool(o.deviation->sigma_in_ci));
        cells.emplace_back(o.deviation->xi_in_ci ? "1" : "0");
    } else {
        for (int i = 0; i < 6; ++i) cells.emplace_back();
    }
}

}  // namespace

void write_records(std::span<const IndicatorRecord> records,
                   const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing:", path);

    std::vector<std::string> header = {"ic_x", "ic_y", "K"};
    if (!records.empty()) {
        for (const ObservableResult& o : records.front().observables) {
            const std::string prefix = std::string(observable_name(o.kind)) + "_";
            for (const char* col : obs_columns) header.push_back(prefix + col);
        }
    }
    header.emplace_back("divergence");
    header.emplace_back("reversibility");

    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';

    const std::size_t obs_count = records.empty() ? 0 : records.front().observables.size();
    for (const IndicatorRecord& r : records) {
        if (r.observables.size() != obs_count)
            throw std::invalid_argument("records disagree on the observable set");
        std::vector<std::string> cells;
        cells.reserve(header.size());
        cells.push_back(format_double(r.ic.x));
        cells.push_back(format_double(r.ic.y));
        cells.push_back(format_double(r.K));
        for (const ObservableResult& o : r.observables) append_observable_cells(cells, o);
        cells.push_back(format_opt(r.divergence));
        cells.push_back(format_opt(r.reversibility));
        for (std::size_t i = 0; i < cells.size(); ++i)
            out << (i ? "," : "") << cells[i];
        out << '\n';
    }
    if (!out.flush()) throw IoError("write failed:", path);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

double parse_double(const std::string& cell, const std::filesystem::path& path) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw IoError("malformed number '" + cell + "' in", path);
    return v;
}

std::size_t parse_size(const std::string& cell, const std::filesystem::path& path) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw IoError("malformed count '" + cell + "' in", path);
    return v;
}

std::optional<double> parse_opt(const std::string& cell, const std::filesystem::path& path) {
    if (cell.empty()) return std::nullopt;
    return parse_double(cell, path);
}

std::optional<bool> parse_opt_bool(const std::string& cell, const std::filesystem::path& path) {
    if (cell.empty()) return std::nullopt;
    if (cell == "1") return true;
    if (cell == "0") return false;
    throw IoError("malformed flag '" + cell + "' in", path);
}

}  // namespace

std::vector<IndicatorRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading:", path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("missing header in", path);
    const std::vector<std::string> header = split_csv(line);

    // observable prefixes, in column order
    std::vector<ObservableKind> kinds;
    for (const std::string& h : header)
        if (h.size() > 7 && h.substr(2) == "_status")
            if (auto k = observable_from_name(h.substr(0, 2))) kinds.push_back(*k);

    const std::size_t obs_cols = std::size(obs_columns);
    const std::size_t expected = 3 + kinds.size() * obs_cols + 2;
    if (header.size() != expected)
        throw IoError("unexpected column count in", path);

    std::vector<IndicatorRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != expected) throw IoError("row width mismatch in", path);
        IndicatorRecord r;
        r.ic.x = parse_double(cells[0], path);
        r.ic.y = parse_double(cells[1], path);
        r.K = parse_double(cells[2], path);
        std::size_t at = 3;
        for (ObservableKind kind : kinds) {
            ObservableResult o;
            o.kind = kind;
            auto outcome = fit_outcome_from_name(cells[at + 0]);
            if (!outcome) throw IoError("unknown status '" + cells[at + 0] + "' in", path);
            o.outcome = *outcome;
            o.exact_returns = parse_size(cells[at + 1], path);
            if (o.outcome == FitOutcome::Ok) {
                FitResult f;
                f.sample_size = parse_size(cells[at + 2], path);
                f.bootstrap_reps = parse_size(cells[at + 3], path);
                f.failed_replicate_fraction = parse_double(cells[at + 4], path);
                f.params.mu = parse_double(cells[at + 5], path);
                f.params.sigma = parse_double(cells[at + 6], path);
                f.params.xi = parse_double(cells[at + 7], path);
                f.mu_ci = {parse_double(cells[at + 8], path), parse_double(cells[at + 9], path)};
                f.sigma_ci = {parse_double(cells[at + 10], path), parse_double(cells[at + 11], path)};
                f.xi_ci = {parse_double(cells[at + 12], path), parse_double(cells[at + 13], path)};
                f.kind = kind;
                o.fit = f;
            }
            TheoreticalTarget& t = o.target;
            t.kind = kind;
            t.d = parse_double(cells[at + 14], path);
            t.alpha = parse_double(cells[at + 15], path);
            t.k = parse_size(cells[at + 16], path);
            t.n = parse_size(cells[at + 17], path);
            auto theory_mu = parse_opt(cells[at + 18], path);
            auto theory_sigma = parse_opt(cells[at + 19], path);
            t.mu_comparable = theory_mu.has_value();
            t.sigma_comparable = theory_sigma.has_value();
            t.expected.mu = theory_mu.value_or(0.0);
            t.expected.sigma = theory_sigma.value_or(1.0);
            t.expected.xi = parse_double(cells[at + 20], path);
            if (o.fit) {
                DeviationScore s;
                s.mu = parse_opt(cells[at + 21], path);
                s.sigma = parse_opt(cells[at + 22], path);
                s.xi = parse_double(cells[at + 23], path);
                s.mu_in_ci = parse_opt_bool(cells[at + 24], path);
                s.sigma_in_ci = parse_opt_bool(cells[at + 25], path);
                s.xi_in_ci = *parse_opt_bool(cells[at + 26], path);
                o.deviation = s;
            }
            at += obs_cols;
            r.observables.push_back(std::move(o));
        }
        r.divergence = parse_opt(cells[at + 0], path);
        r.reversibility = parse_opt(cells[at + 1], path);
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

constexpr double log_display_floor = 1e-16;

const ObservableResult* find_observable(const IndicatorRecord& r, std::string_view name) {
    for (const ObservableResult& o : r.observables)
        if (observable_name(o.kind) == name) return &o;
    return nullptr;
}

}  // namespace

double record_field(const IndicatorRecord& record, std::string_view field) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (field == "divergence")
        return record.divergence ? *record.divergence : nan;
    if (field == "reversibility")
        return record.reversibility ? *record.reversibility : nan;
    if (field == "log10_div")
        return record.divergence ? std::log10(std::max(*record.divergence, log_display_floor))
                                 : nan;
    if (field == "log10_R")
        return record.reversibility
                   ? std::log10(std::max(*record.reversibility, log_display_floor))
                   : nan;

    const std::size_t us = field.rfind('_');
    if (us == std::string_view::npos || us + 1 >= field.size())
        throw std::invalid_argument("unknown record field: " + std::string(field));
    const ObservableResult* o = find_observable(record, field.substr(us + 1));
    if (!o) throw std::invalid_argument("unknown record field: " + std::string(field));
    const std::string_view what = field.substr(0, us);
    if (what == "exact_returns") return static_cast<double>(o->exact_returns);
    if (what == "xi") return o->fit ? o->fit->params.xi : nan;
    if (what == "sigma") return o->fit ? o->fit->params.sigma : nan;
    if (what == "mu") return o->fit ? o->fit->params.mu : nan;
    if (what == "dev_xi") return o->deviation ? o->deviation->xi : nan;
    if (what == "dev_sigma")
        return o->deviation && o->deviation->sigma ? *o->deviation->sigma : nan;
    if (what == "dev_mu")
        return o->deviation && o->deviation->mu ? *o->deviation->mu : nan;
    throw std::invalid_argument("unknown record field: " + std::string(field));
}

void render_heatmap(std::span<const double> values, std::size_t width, std::size_t height,
                    const std::filesystem::path& path) {
    if (values.size() != width * height)
        throw std::invalid_argument("heatmap size mismatch");
    std::vector<double> finite;
    finite.reserve(values.size());
    for (double v : values)
        if (std::isfinite(v)) finite.push_back(v);
    double lo = 0.0, hi = 1.0;
    if (!finite.empty()) {
        std::sort(finite.begin(), finite.end());
        auto pct = [&](double p) {
            const double idx = p * static_cast<double>(finite.size() - 1);
            const std::size_t i = static_cast<std::size_t>(idx);
            if (i + 1 >= finite.size()) return finite.back();
            const double f = idx - static_cast<double>(i);
            return finite[i] * (1.0 - f) + finite[i + 1] * f;
        };
        lo = pct(0.02);
        hi = pct(0.98);
    }

    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing:", path);
    out << "P3\n" << width << ' ' << height << "\n255\n";
    // row 0 of the grid is the bottom image row
    for (std::size_t row = height; row-- > 0;) {
        for (std::size_t col = 0; col < width; ++col) {
            const double v = values[row * width + col];
            if (!std::isfinite(v)) {
                out << "255 0 0 ";  // reserved: missing / failed cell
                continue;
            }
            int gray = 0;
            if (hi > lo) {
                const double t = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
                gray = static_cast<int>(std::lround(t * 255.0));
            }
            out << gray << ' ' << gray << ' ' << gray << ' ';
        }
        out << '\n';
    }
    if (!out.flush()) throw IoError("write failed:", path);
}

void render_heatmap(std::span<const IndicatorRecord> grid, std::size_t resolution,
                    std::string_view field, const std::filesystem::path& path) {
    if (grid.size() != resolution * resolution)
        throw std::invalid_argument("grid size is not resolution^2");
    std::vector<double> values;
    values.reserve(grid.size());
    for (const IndicatorRecord& r : grid) values.push_back(record_field(r, field));
    render_heatmap(values, resolution, resolution, path);
}

}  // namespace gevind
