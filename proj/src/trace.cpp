#include "shilsim/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace shilsim {

bool WaveformTrace::has_column(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::size_t WaveformTrace::index_of(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw MissingColumns("trace has no column '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

const std::vector<double>& WaveformTrace::column(const std::string& name) const {
    return columns[index_of(name)];
}

namespace {

// Index of the last sample with times[i] <= t (clamped to a valid interval
// start). Requires a non-empty trace.
std::size_t interval_index(const std::vector<double>& times, double t) {
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin() - 1);
    if (i + 1 >= times.size()) i = times.size() - 2;
    return i;
}

} // namespace

double WaveformTrace::value_at(std::size_t column_index, double t) const {
    if (times.size() < 2 || t < times.front() || t > times.back()) {
        throw WindowOutOfRange("time " + std::to_string(t) + " outside trace range");
    }
    const auto& y = columns[column_index];
    const std::size_t i = interval_index(times, t);
    const double h = times[i + 1] - times[i];
    const double w = (t - times[i]) / h;
    return y[i] + w * (y[i + 1] - y[i]);
}

void write_csv(const WaveformTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("io_error", "cannot open '" + path + "' for writing");
    out << "time";
    for (const auto& n : trace.names) out << ',' << n;
    out << '\n';
    char buf[32];
    for (std::size_t s = 0; s < trace.sample_count(); ++s) {
        std::snprintf(buf, sizeof buf, "%.17g", trace.times[s]);
        out << buf;
        for (const auto& col : trace.columns) {
            std::snprintf(buf, sizeof buf, "%.17g", col[s]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

double integrate_column(const WaveformTrace& trace, std::size_t column_index,
                        double t0, double t1) {
    if (trace.times.size() < 2 || t0 < trace.times.front() || t1 > trace.times.back() || t1 < t0) {
        throw WindowOutOfRange("integration window outside trace range");
    }
    if (t0 == t1) return 0.0;
    const auto& t = trace.times;
    const auto& y = trace.columns[column_index];
    const std::size_t first = interval_index(t, t0);
    double acc = 0.0;
    for (std::size_t i = first; i + 1 < t.size() && t[i] < t1; ++i) {
        const double a = std::max(t0, t[i]);
        const double b = std::min(t1, t[i + 1]);
        if (b <= a) continue;
        const double h = t[i + 1] - t[i];
        const double ya = y[i] + (a - t[i]) / h * (y[i + 1] - y[i]);
        const double yb = y[i] + (b - t[i]) / h * (y[i + 1] - y[i]);
        acc += 0.5 * (ya + yb) * (b - a);
    }
    return acc;
}

double average_column(const WaveformTrace& trace, std::size_t column_index,
                      double t0, double t1) {
    if (!(t1 > t0)) throw WindowOutOfRange("average window must have t1 > t0");
    return integrate_column(trace, column_index, t0, t1) / (t1 - t0);
}

} // namespace shilsim
