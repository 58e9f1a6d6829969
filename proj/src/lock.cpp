#include "shilsim/lock.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace shilsim {

PhaseSample extract_phase(const WaveformTrace& trace, const std::string& signal,
                          double f_ref, double t0, double amplitude_epsilon) {
    const double period = 1.0 / f_ref;
    double t1 = t0 + period;
    // Tolerate one-ulp drift when windows are laid out by repeated addition.
    const double slack = 1e-9 * period;
    if (trace.times.size() < 2 || t0 < trace.times.front() - slack ||
        t1 > trace.times.back() + slack) {
        throw WindowOutOfRange("phase window [" + std::to_string(t0) + ", " +
                               std::to_string(t1) + "] not covered by trace");
    }
    t0 = std::max(t0, trace.times.front());
    t1 = std::min(t1, trace.times.back());
    const auto& t = trace.times;
    const auto& y = trace.columns[trace.index_of(signal)];

    const auto lo = std::lower_bound(t.begin(), t.end(), t0);
    const auto hi = std::upper_bound(t.begin(), t.end(), t1);
    if (hi - lo < 32) throw TooShort("fewer than 32 samples in the phase window");

    const double w = 2.0 * std::numbers::pi * f_ref;
    auto integrand = [&](double tt, double yy) {
        return std::complex<double>(yy * std::cos(w * tt), -yy * std::sin(w * tt));
    };
    auto value_at = [&](std::size_t i0, double tt) {
        const double h = t[i0 + 1] - t[i0];
        const double f = (tt - t[i0]) / h;
        return y[i0] + f * (y[i0 + 1] - y[i0]);
    };

    std::size_t i = static_cast<std::size_t>(lo - t.begin());
    if (i > 0 && t[i] > t0) --i;
    std::complex<double> acc{0.0, 0.0};
    for (; i + 1 < t.size() && t[i] < t1; ++i) {
        const double a = std::max(t0, t[i]);
        const double b = std::min(t1, t[i + 1]);
        if (b <= a) continue;
        const auto fa = integrand(a, a == t[i] ? y[i] : value_at(i, a));
        const auto fb = integrand(b, b == t[i + 1] ? y[i + 1] : value_at(i, b));
        acc += 0.5 * (fa + fb) * (b - a);
    }
    const std::complex<double> c = 2.0 / period * acc;
    const double amplitude = std::abs(c);
    if (amplitude < amplitude_epsilon) {
        throw AmplitudeTooSmall("fundamental amplitude " + std::to_string(amplitude) +
                                " below epsilon; no oscillation at f_ref");
    }
    PhaseSample out;
    out.t_center = t0 + 0.5 * period;
    out.phase_deg = wrap_degrees(std::arg(c) * 180.0 / std::numbers::pi);
    out.amplitude = amplitude;
    out.window = period;
    return out;
}

namespace {

struct WindowSeries {
    std::vector<double> t_start;    // window start times
    std::vector<double> unwrapped;  // continuous phase, deg
    std::vector<double> amplitude;
};

WindowSeries phase_series(const WaveformTrace& trace, const std::string& signal,
                          double f_ref, double eps) {
    const double period = 1.0 / f_ref;
    const double t0 = trace.times.front();
    const std::size_t count =
        static_cast<std::size_t>(std::floor((trace.times.back() - t0) / period + 1e-9));
    WindowSeries s;
    double prev = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double ts = t0 + static_cast<double>(k) * period;
        const auto ps = extract_phase(trace, signal, f_ref, ts, eps);
        if (k == 0) {
            prev = ps.phase_deg;
        } else {
            prev += angle_difference_deg(ps.phase_deg, wrap_degrees(prev));
        }
        s.t_start.push_back(ts);
        s.unwrapped.push_back(prev);
        s.amplitude.push_back(ps.amplitude);
    }
    return s;
}

} // namespace

LockReport detect_lock(const WaveformTrace& trace, const std::string& signal,
                       double f_ref, double tail_fraction, const LockDetectOptions& options) {
    const auto s = phase_series(trace, signal, f_ref, options.amplitude_epsilon);
    const std::size_t count = s.unwrapped.size();
    if (count < static_cast<std::size_t>(options.min_windows)) {
        throw TooShort("lock detection needs at least " + std::to_string(options.min_windows) +
                       " REF cycles, trace has " + std::to_string(count));
    }
    std::size_t tail = static_cast<std::size_t>(std::lround(tail_fraction * count));
    tail = std::clamp<std::size_t>(tail, 2, count);
    const std::size_t first = count - tail;

    const auto [mn, mx] = std::minmax_element(s.unwrapped.begin() + first, s.unwrapped.end());
    LockReport rep;
    rep.excursion_deg = 0.5 * (*mx - *mn);
    rep.locked = rep.excursion_deg < options.threshold_deg;

    double mean_phase = 0.0, mean_amp = 0.0;
    for (std::size_t k = first; k < count; ++k) {
        mean_phase += s.unwrapped[k];
        mean_amp += s.amplitude[k];
    }
    mean_phase /= static_cast<double>(tail);
    mean_amp /= static_cast<double>(tail);
    rep.lock_phase_deg = wrap_degrees(mean_phase);
    rep.amplitude = mean_amp;

    // Least-squares drift over the tail, degrees per REF cycle.
    double sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
    for (std::size_t k = first; k < count; ++k) {
        const double xk = static_cast<double>(k - first);
        sx += xk;
        sxx += xk * xk;
        sy += s.unwrapped[k];
        sxy += xk * s.unwrapped[k];
    }
    const double denom = static_cast<double>(tail) * sxx - sx * sx;
    rep.drift_deg_per_cycle = denom != 0.0
        ? (static_cast<double>(tail) * sxy - sx * sy) / denom : 0.0;

    try {
        rep.classified_bit = classify(Phasor{mean_amp, rep.lock_phase_deg}, 0.0, options.classify);
    } catch (const Error&) {
        rep.classified_bit = std::nullopt;
    }

    // Earliest window index after which the excursion criterion holds.
    double suf_min = s.unwrapped.back(), suf_max = s.unwrapped.back();
    std::optional<std::size_t> settled_from;
    for (std::size_t k = count; k-- > 0;) {
        suf_min = std::min(suf_min, s.unwrapped[k]);
        suf_max = std::max(suf_max, s.unwrapped[k]);
        if (0.5 * (suf_max - suf_min) < options.threshold_deg) settled_from = k;
    }
    if (rep.locked && settled_from) rep.settle_time = s.t_start[*settled_from];
    return rep;
}

namespace {

std::vector<double> trace_final_state(const CircuitModel& model, const WaveformTrace& trace) {
    std::vector<double> x(model.dimension());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = trace.columns[i].back();
    return x;
}

} // namespace

LockStatePair find_lock_states(const CircuitModel& model, double f_ref,
                               const FindLockOptions& options) {
    const double period = 1.0 / f_ref;
    const double analysis_span = options.analysis_cycles * period;

    IntegratorConfig settle_cfg = options.integrator;
    settle_cfg.capture_components = false;
    IntegratorConfig dense_cfg = options.integrator;
    if (dense_cfg.step > 0.0) {
        dense_cfg.capture_stride =
            std::max(1, static_cast<int>(std::floor(period / dense_cfg.step /
                                                    options.samples_per_cycle)));
    } else {
        dense_cfg.max_step = period / options.samples_per_cycle;
        dense_cfg.capture_stride = 1;
    }

    std::vector<double> x = options.initial.empty() ? model.initial_state : options.initial;
    double t = 0.0;
    const double extension =
        options.extension_time > 0.0 ? options.extension_time : options.settle_time;

    auto analyze = [&](std::vector<double> start, double t_begin) {
        LockState st;
        IntegratorConfig cfg = dense_cfg;
        cfg.t_start = t_begin;
        cfg.t_stop = t_begin + analysis_span;
        st.trace = integrate(model, cfg, std::move(start));
        st.report = detect_lock(st.trace, options.signal, f_ref, options.tail_fraction,
                                options.detect);
        st.final_state = trace_final_state(model, st.trace);
        st.t_end = cfg.t_stop;
        return st;
    };

    if (options.settle_time > 0.0) {
        x = step_to_event(model, settle_cfg, std::move(x), t, t + options.settle_time);
        t += options.settle_time;
    }
    LockState a = analyze(x, t);
    int tries = 0;
    while (!a.report.locked && tries < options.max_extensions) {
        ++tries;
        double t_next = a.t_end + extension;
        auto xs = step_to_event(model, settle_cfg, a.final_state, a.t_end, t_next);
        a = analyze(std::move(xs), t_next);
    }
    if (!a.report.locked) {
        throw LockNotFound("first transient failed to lock (excursion " +
                           std::to_string(a.report.excursion_deg) + " deg over tail)");
    }

    // Delay the settled state by half a REF period: the SYNC drive has
    // period T_ref/2, so restarting from that state lands exactly on the
    // complementary lock trajectory.
    auto y = step_to_event(model, settle_cfg, a.final_state, a.t_end, a.t_end + 0.5 * period);
    LockState b = analyze(std::move(y), a.t_end);
    if (!b.report.locked) {
        throw LockNotFound("time-shifted preparation failed to lock");
    }

    LockStatePair out;
    out.separation_deg =
        std::abs(angle_difference_deg(b.report.lock_phase_deg, a.report.lock_phase_deg));
    if (out.separation_deg < 90.0) {
        throw DegenerateStates("lock states only " + std::to_string(out.separation_deg) +
                               " deg apart; both runs fell into the same basin");
    }
    if (std::abs(out.separation_deg - 180.0) > options.separation_tol_deg) {
        throw DegenerateStates("lock state separation " + std::to_string(out.separation_deg) +
                               " deg outside tolerance around 180 deg");
    }
    out.state_a = std::move(a);
    out.state_b = std::move(b);
    return out;
}

} // namespace shilsim
