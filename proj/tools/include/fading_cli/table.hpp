#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <fading/composite.hpp>

namespace fading_cli {

/// Evenly spaced envelope grid, endpoints included.
struct XGrid {
    double start = 0.0;
    double stop = 4.0;
    int count = 81;

    void validate() const;
    double at(int i) const;
};

/// Parses "start:stop:count".
XGrid parse_grid(const std::string& text);

struct Row {
    double x;
    double pdf_numeric;
    double pdf_series;
    double abs_diff;
};

struct Table {
    std::vector<Row> rows;
    double atom_numeric = 0.0;
    double atom_series = 0.0;
};

/// Oracle and series side by side on the grid. Rows are independent, so they are
/// split across `jobs` threads.
Table tabulate(const fading::CompositeSpec& spec, const XGrid& grid, const fading::SeriesConfig& sc,
               const fading::QuadConfig& cfg, unsigned jobs = 1);

/// Grid abscissa of the largest numeric pdf value.
double argmax_x(const Table& t);

/// Header `x,pdf_numeric,pdf_series,abs_diff`, %.17g, LF line endings.
void write_csv(std::ostream& os, const Table& t);
Table read_csv(std::istream& is);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace fading_cli
