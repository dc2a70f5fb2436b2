#include "fading_cli/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fading_cli {

void XGrid::validate() const {
    if (count < 2) throw std::invalid_argument("x grid count must be >= 2");
    if (!std::isfinite(start) || !std::isfinite(stop)) throw std::invalid_argument("x grid bounds must be finite");
    if (start < 0.0) throw std::invalid_argument("x grid start must be non-negative");
    if (!(stop > start)) throw std::invalid_argument("x grid stop must exceed start");
}

double XGrid::at(int i) const {
    if (i == count - 1) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

XGrid parse_grid(const std::string& text) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos || text.find(':', second + 1) != std::string::npos)
        throw std::invalid_argument("x grid must be start:stop:count, got '" + text + "'");
    XGrid g;
    try {
        std::size_t used = 0;
        const std::string a = text.substr(0, first);
        const std::string b = text.substr(first + 1, second - first - 1);
        const std::string c = text.substr(second + 1);
        g.start = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        g.stop = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        g.count = std::stoi(c, &used);
        if (used != c.size()) throw std::invalid_argument(c);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("x grid must be start:stop:count, got '" + text + "'");
    }
    g.validate();
    return g;
}

namespace {

Row evaluate_row(double x, const fading::CompositeSpec& spec, const fading::SeriesConfig& sc,
                 const fading::QuadConfig& cfg) {
    Row r{x, 0.0, 0.0, 0.0};
    r.pdf_numeric = fading::composite_envelope_pdf_numeric(x, spec, cfg).density;
    r.pdf_series = x == 0.0 ? fading::envelope_pdf_series_at_origin(spec, sc).density
                            : fading::envelope_pdf_series(x, spec, sc).density;
    r.abs_diff = r.pdf_numeric == r.pdf_series ? 0.0 : std::fabs(r.pdf_numeric - r.pdf_series);
    return r;
}

}  // namespace

Table tabulate(const fading::CompositeSpec& spec, const XGrid& grid, const fading::SeriesConfig& sc,
               const fading::QuadConfig& cfg, unsigned jobs) {
    grid.validate();
    spec.validate();
    sc.validate();
    Table t;
    t.rows.resize(static_cast<std::size_t>(grid.count));
    t.atom_numeric = fading::composite_density(spec, cfg).atom_weight;
    t.atom_series = fading::envelope_pdf_series_at_origin(spec, sc).atom_weight;

    jobs = std::clamp(jobs, 1u, static_cast<unsigned>(grid.count));
    if (jobs == 1) {
        for (int i = 0; i < grid.count; ++i) t.rows[i] = evaluate_row(grid.at(i), spec, sc, cfg);
        return t;
    }
    std::vector<std::exception_ptr> errors(jobs);
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w] {
                try {
                    for (int i = static_cast<int>(w); i < grid.count; i += static_cast<int>(jobs))
                        t.rows[i] = evaluate_row(grid.at(i), spec, sc, cfg);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return t;
}

double argmax_x(const Table& t) {
    if (t.rows.empty()) throw std::invalid_argument("argmax_x: empty table");
    const auto it = std::max_element(t.rows.begin(), t.rows.end(),
                                     [](const Row& a, const Row& b) { return a.pdf_numeric < b.pdf_numeric; });
    return it->x;
}

void write_csv(std::ostream& os, const Table& t) {
    os << "x,pdf_numeric,pdf_series,abs_diff\n";
    char buf[128];
    for (const Row& r : t.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.x, r.pdf_numeric, r.pdf_series, r.abs_diff);
        os << buf;
    }
}

Table read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "x,pdf_numeric,pdf_series,abs_diff")
        throw std::runtime_error("unexpected csv header");
    Table t;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        double v[4];
        for (double& d : v) {
            if (!std::getline(ls, cell, ',')) throw std::runtime_error("short csv row: " + line);
            d = std::strtod(cell.c_str(), nullptr);
        }
        t.rows.push_back({v[0], v[1], v[2], v[3]});
    }
    return t;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace fading_cli
