#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shilsim/errors.hpp"

namespace shilsim {

/// Time-stamped multi-signal record of a transient run. Columns hold the
/// state variables plus per-component v, i, p readouts; times are strictly
/// increasing and event times appear exactly as samples.
struct WaveformTrace {
    std::vector<double> times;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;  // columns[k][sample]
    std::vector<std::pair<double, std::string>> event_marks;

    std::size_t sample_count() const { return times.size(); }
    bool has_column(const std::string& name) const;
    std::size_t index_of(const std::string& name) const;  // throws MissingColumns
    const std::vector<double>& column(const std::string& name) const;

    /// Linear interpolation of a column at time t (t within [front, back]).
    double value_at(std::size_t column_index, double t) const;
};

/// Writes the trace as CSV: header row of names (time first), one row per
/// sample, full double precision (17 significant digits).
void write_csv(const WaveformTrace& trace, const std::string& path);

/// Trapezoidal integral of column y over [t0, t1] with linear
/// interpolation at the window edges.
double integrate_column(const WaveformTrace& trace, std::size_t column_index,
                        double t0, double t1);

/// Time-average of a column over [t0, t1].
double average_column(const WaveformTrace& trace, std::size_t column_index,
                      double t0, double t1);

} // namespace shilsim
