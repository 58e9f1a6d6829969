#include "shilsim/transient.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shilsim {

void IntegratorConfig::validate() const {
    if (!(t_stop > t_start)) throw ConfigInvalid("t_stop must be > t_start");
    if (step < 0.0) throw ConfigInvalid("step must be >= 0");
    if (method == IntegratorMethod::rk4_fixed && !(step > 0.0)) {
        throw ConfigInvalid("rk4_fixed requires a positive step");
    }
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigInvalid("tolerances must be > 0");
    if (capture_stride < 1) throw ConfigInvalid("capture_stride must be >= 1");
}

namespace {

using Vec = std::vector<double>;

void check_finite(const Vec& x, double t) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw NonFiniteState("non-finite state at t = " + std::to_string(t));
        }
    }
}

/// In-place Gaussian elimination with partial pivoting on an n*n row-major
/// matrix. Solves A x = b, overwriting b with x.
void solve_dense(std::size_t n, Vec& a, Vec& b) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        }
        if (a[piv * n + col] == 0.0) {
            throw StepUnderflow("singular Newton matrix in implicit step");
        }
        if (piv != col) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[piv * n + k]);
            std::swap(b[col], b[piv]);
        }
        const double d = a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / d;
            if (f == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t ri = n; ri-- > 0;) {
        double acc = b[ri];
        for (std::size_t k = ri + 1; k < n; ++k) acc -= a[ri * n + k] * b[k];
        b[ri] = acc / a[ri * n + ri];
    }
}

class Stepper {
public:
    Stepper(const CircuitModel& model, const IntegratorConfig& config)
        : model_(model), cfg_(config), n_(model.dimension()) {}

    void rk4_step(double t, double h, const Vec& x, Vec& out) {
        k1_.resize(n_); k2_.resize(n_); k3_.resize(n_); k4_.resize(n_); tmp_.resize(n_);
        model_.derivative(t, x, k1_);
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = x[i] + 0.5 * h * k1_[i];
        model_.derivative(t + 0.5 * h, tmp_, k2_);
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = x[i] + 0.5 * h * k2_[i];
        model_.derivative(t + 0.5 * h, tmp_, k3_);
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = x[i] + h * k3_[i];
        model_.derivative(t + h, tmp_, k4_);
        out.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            out[i] = x[i] + h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
        }
    }

    /// One trapezoidal step solved by Newton iteration with the model's
    /// analytic Jacobian (finite differences as a fallback). Returns false
    /// when Newton fails to converge, so the caller can shrink the step.
    bool trap_step(double t, double h, const Vec& x, Vec& out) {
        f0_.resize(n_); fy_.resize(n_); res_.resize(n_);
        jac_.resize(n_ * n_); mat_.resize(n_ * n_);
        model_.derivative(t, x, f0_);
        out = x;
        for (std::size_t i = 0; i < n_; ++i) out[i] += h * f0_[i];  // explicit predictor
        const double t1 = t + h;
        for (int it = 0; it < 30; ++it) {
            model_.derivative(t1, out, fy_);
            double rnorm = 0.0;
            for (std::size_t i = 0; i < n_; ++i) {
                res_[i] = out[i] - x[i] - 0.5 * h * (f0_[i] + fy_[i]);
                const double sc = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(x[i]), std::abs(out[i]));
                rnorm = std::max(rnorm, std::abs(res_[i]) / sc);
            }
            if (rnorm < 0.05) return true;
            fill_jacobian(t1, out);
            for (std::size_t i = 0; i < n_ * n_; ++i) mat_[i] = -0.5 * h * jac_[i];
            for (std::size_t i = 0; i < n_; ++i) mat_[i * n_ + i] += 1.0;
            for (std::size_t i = 0; i < n_; ++i) res_[i] = -res_[i];
            solve_dense(n_, mat_, res_);
            for (std::size_t i = 0; i < n_; ++i) out[i] += res_[i];
        }
        return false;
    }

private:
    void fill_jacobian(double t, const Vec& x) {
        if (model_.jacobian) {
            model_.jacobian(t, x, jac_);
            return;
        }
        Vec xp = x, fp(n_), fm(n_), xm = x;
        for (std::size_t j = 0; j < n_; ++j) {
            const double dx = 1e-7 * std::max(1.0, std::abs(x[j]));
            xp[j] = x[j] + dx;
            xm[j] = x[j] - dx;
            model_.derivative(t, xp, fp);
            model_.derivative(t, xm, fm);
            for (std::size_t i = 0; i < n_; ++i) jac_[i * n_ + j] = (fp[i] - fm[i]) / (2.0 * dx);
            xp[j] = x[j];
            xm[j] = x[j];
        }
    }

    const CircuitModel& model_;
    const IntegratorConfig& cfg_;
    std::size_t n_;
    Vec k1_, k2_, k3_, k4_, tmp_, f0_, fy_, res_, jac_, mat_;
};

class Recorder {
public:
    Recorder(const CircuitModel& model, const IntegratorConfig& cfg, WaveformTrace* trace)
        : model_(model), cfg_(cfg), trace_(trace) {
        if (!trace_) return;
        trace_->names = model.state_names;
        if (cfg_.capture_components) {
            for (const auto& c : model.components) {
                trace_->names.push_back(c.name + ".v");
                trace_->names.push_back(c.name + ".i");
                trace_->names.push_back(c.name + ".p");
            }
            trace_->names.push_back("stored_energy");
        }
        trace_->columns.assign(trace_->names.size(), {});
    }

    void record(double t, const Vec& x, bool force) {
        if (!trace_) return;
        if (!force && ++since_capture_ < cfg_.capture_stride) return;
        since_capture_ = 0;
        if (!trace_->times.empty() && t <= trace_->times.back()) return;  // event == capture
        trace_->times.push_back(t);
        std::size_t k = 0;
        for (std::size_t i = 0; i < model_.dimension(); ++i) trace_->columns[k++].push_back(x[i]);
        if (cfg_.capture_components) {
            for (const auto& c : model_.components) {
                const auto r = c.readout(t, x);
                trace_->columns[k++].push_back(r.v);
                trace_->columns[k++].push_back(r.i);
                trace_->columns[k++].push_back(r.v * r.i);
            }
            trace_->columns[k++].push_back(model_.stored_energy(t, x));
        }
    }

private:
    const CircuitModel& model_;
    const IntegratorConfig& cfg_;
    WaveformTrace* trace_;
    int since_capture_ = 0;
};

/// Integrates one event-free segment [t0, t1]; updates x in place.
void run_segment(Stepper& stepper, const IntegratorConfig& cfg, Vec& x, double t0, double t1,
                 Recorder& rec) {
    const double span = t1 - t0;
    if (span <= 0.0) return;

    if (cfg.step > 0.0) {
        // Fixed step, conformed so the segment ends exactly at t1.
        const long nsteps = std::max(1L, std::lround(std::ceil(span / cfg.step - 1e-9)));
        const double h = span / static_cast<double>(nsteps);
        Vec next;
        for (long s = 0; s < nsteps; ++s) {
            const double t = t0 + h * static_cast<double>(s);
            if (cfg.method == IntegratorMethod::rk4_fixed) {
                stepper.rk4_step(t, h, x, next);
            } else if (!stepper.trap_step(t, h, x, next)) {
                throw StepUnderflow("Newton failed to converge at fixed step, t = " +
                                    std::to_string(t));
            }
            x.swap(next);
            const bool last = s + 1 == nsteps;
            check_finite(x, last ? t1 : t + h);
            rec.record(last ? t1 : t + h, x, last);
        }
        return;
    }

    // Adaptive trapezoidal with step-doubling error estimate.
    const double h_floor = std::max(span * 1e-14, 1e-18);
    double h = span / 100.0;
    if (cfg.max_step > 0.0) h = std::min(h, cfg.max_step);
    double t = t0;
    Vec full, half, mid;
    while (t < t1) {
        bool event_step = false;
        if (h >= t1 - t) {
            h = t1 - t;
            event_step = true;
        }
        if (h < h_floor) {
            throw StepUnderflow("adaptive step underflow at t = " + std::to_string(t));
        }
        const bool ok_full = stepper.trap_step(t, h, x, full);
        const bool ok_half = ok_full && stepper.trap_step(t, 0.5 * h, x, mid) &&
                             stepper.trap_step(t + 0.5 * h, 0.5 * h, mid, half);
        if (!ok_full || !ok_half) {
            h *= 0.25;
            continue;
        }
        double err = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double e = (half[i] - full[i]) / 3.0;
            const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(x[i]), std::abs(half[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        if (err <= 1.0) {
            t = event_step ? t1 : t + h;
            x = half;
            check_finite(x, t);
            rec.record(t, x, event_step);
        }
        double grow = 0.9 * std::pow(std::max(err, 1e-10), -1.0 / 3.0);
        h *= std::clamp(grow, 0.2, 5.0);
        if (cfg.max_step > 0.0) h = std::min(h, cfg.max_step);
    }
}

std::vector<double> event_times_between(const CircuitModel& model, double t0, double t1) {
    std::vector<double> cuts;
    for (const auto& [t, label] : model.events) {
        if (t > t0 && t < t1) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

} // namespace

WaveformTrace integrate(const CircuitModel& model, const IntegratorConfig& config,
                        std::vector<double> initial) {
    config.validate();
    if (initial.size() != model.dimension()) {
        throw ConfigInvalid("initial state dimension mismatch");
    }
    WaveformTrace trace;
    Recorder rec(model, config, &trace);
    Stepper stepper(model, config);
    Vec x = std::move(initial);
    check_finite(x, config.t_start);
    rec.record(config.t_start, x, true);

    auto cuts = event_times_between(model, config.t_start, config.t_stop);
    cuts.push_back(config.t_stop);
    double t = config.t_start;
    for (double te : cuts) {
        run_segment(stepper, config, x, t, te, rec);
        t = te;
    }
    for (const auto& [tev, label] : model.events) {
        if (tev >= config.t_start && tev <= config.t_stop) {
            trace.event_marks.emplace_back(tev, label);
        }
    }
    return trace;
}

std::vector<double> step_to_event(const CircuitModel& model, const IntegratorConfig& config,
                                  std::vector<double> state, double t, double t_event) {
    if (t_event < t) throw ConfigInvalid("t_event must be >= t");
    if (t_event == t) return state;
    IntegratorConfig cfg = config;
    cfg.t_start = t;
    cfg.t_stop = t_event;
    cfg.validate();
    if (state.size() != model.dimension()) {
        throw ConfigInvalid("state dimension mismatch");
    }
    Recorder rec(model, cfg, nullptr);
    Stepper stepper(model, cfg);
    auto cuts = event_times_between(model, t, t_event);
    cuts.push_back(t_event);
    double tcur = t;
    for (double te : cuts) {
        run_segment(stepper, cfg, state, tcur, te, rec);
        tcur = te;
    }
    return state;
}

} // namespace shilsim
