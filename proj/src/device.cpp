#include "shilsim/device.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace shilsim {

void NonlinearResistorParams::validate() const {
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3) || !std::isfinite(knee)) {
        throw ConfigInvalid("nonlinear resistor parameters must be finite");
    }
    if (!(knee > 0.0)) throw ConfigInvalid("nonlinear resistor knee must be > 0");
}

double eval_f(const NonlinearResistorParams& p, double v) {
    const double th = p.k1 * std::tanh(p.k2 * v);
    const double k3sq = p.k3 * p.k3;
    double g = 0.0;
    if (v > p.knee) {
        const double d = v - p.knee;
        g = k3sq * d * d;
    } else if (v < -p.knee) {
        const double d = v + p.knee;
        g = k3sq * d * d;
    }
    // supplying: the tanh term is the active side (negated into the tank);
    // the quadratic tails stay passive and limit the amplitude.
    return p.polarity == NonlinearPolarity::supplying ? -th + g : th + g;
}

double eval_dfdv(const NonlinearResistorParams& p, double v) {
    const double th = std::tanh(p.k2 * v);
    const double dth = p.k1 * p.k2 * (1.0 - th * th);
    const double k3sq = p.k3 * p.k3;
    double dg = 0.0;
    if (v > p.knee) {
        dg = 2.0 * k3sq * (v - p.knee);
    } else if (v < -p.knee) {
        dg = 2.0 * k3sq * (v + p.knee);
    }
    return p.polarity == NonlinearPolarity::supplying ? -dth + dg : dth + dg;
}

void SyncSourceParams::validate() const {
    if (!(amplitude >= 0.0)) throw ConfigInvalid("sync amplitude must be >= 0");
    if (!(f_sync > 0.0)) throw ConfigInvalid("sync frequency must be > 0");
}

double sync_voltage(const SyncSourceParams& p, double t) {
    const double phase = 2.0 * std::numbers::pi * p.f_sync * t +
                         p.phase_offset_deg * std::numbers::pi / 180.0;
    return p.amplitude * std::cos(phase);
}

void SwitchParams::validate() const {
    if (!(r_on >= 0.0) || !(r_off > r_on)) {
        throw ConfigInvalid("switch resistances must satisfy 0 <= r_on < r_off");
    }
    double prev_end = -std::numeric_limits<double>::infinity();
    for (const auto& w : schedule) {
        if (!(w.duration > 0.0)) throw ConfigInvalid("actuation window duration must be > 0");
        if (w.start < prev_end) {
            throw ConfigInvalid("actuation windows must be sorted and non-overlapping");
        }
        prev_end = w.start + w.duration;
    }
}

bool switch_actuated(const SwitchParams& p, double t) {
    for (const auto& w : p.schedule) {
        if (t < w.start) return false;
        if (t < w.start + w.duration) return true;
    }
    return false;
}

std::pair<double, double> switch_resistances(const SwitchParams& p, double t) {
    return switch_actuated(p, t) ? std::make_pair(p.r_off, p.r_on)
                                 : std::make_pair(p.r_on, p.r_off);
}

StartupCheck check_startup_condition(const NonlinearResistorParams& params,
                                     double r1, double r2) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) throw ConfigInvalid("r1 and r2 must be > 0");
    StartupCheck out;
    out.upper_bound = 1.0 / r2;
    out.negative_conductance = std::abs(params.k1 * params.k2);
    out.lower_bound = 1.0 / r1;
    out.satisfied = out.upper_bound > out.negative_conductance &&
                    out.negative_conductance > out.lower_bound;
    return out;
}

} // namespace shilsim
