#include "shilsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shilsim {

double CircuitModel::stored_energy(double t, std::span<const double> x) const {
    double e = 0.0;
    for (const auto& c : components) {
        if (c.stores_energy && c.energy) e += c.energy(t, x);
    }
    return e;
}

const Component& CircuitModel::component(const std::string& name) const {
    for (const auto& c : components) {
        if (c.name == name) return c;
    }
    throw UnknownComponent("no component named '" + name + "'");
}

double component_power(const CircuitModel& model, const std::string& name,
                       double t, std::span<const double> state) {
    const auto r = model.component(name).readout(t, state);
    return r.v * r.i;
}

void TwoTankLatchConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            throw ConfigInvalid(std::string(name) + " must be > 0");
        }
    };
    positive(L1, "L1");
    positive(C1, "C1");
    positive(R1, "R1");
    positive(L2, "L2");
    positive(C2, "C2");
    positive(R2, "R2");
    nonlinear.validate();
    sync.validate();
    sw.validate();
    if (!(f_ref > 0) || f_ref != sync.f_sync / 2.0) {
        throw ConfigInvalid("f_ref must equal sync.f_sync / 2 exactly");
    }
}

namespace {

/// Voltage across L1 and current entering the tank path, given the
/// two-resistor switch network: r_t in series between the tank node and
/// L1, r_s across L1. Valid for r_on = 0 (only the sum must be positive).
struct SwitchSolution {
    double u;    // voltage across L1
    double i_t;  // current through the tank path
};

inline SwitchSolution solve_switch(double v1, double i_l1, double r_t, double r_s) {
    const double denom = r_t + r_s;
    return {r_s * (v1 - r_t * i_l1) / denom, (v1 + r_s * i_l1) / denom};
}

} // namespace

CircuitModel build_two_tank(const TwoTankLatchConfig& config) {
    config.validate();
    const TwoTankLatchConfig cfg = config;  // captured by value below

    CircuitModel model;
    model.state_names = {"v1", "v2", "iL1", "iL2"};
    model.initial_state = {1e-3, 0.0, 0.0, 0.0};

    model.derivative = [cfg](double t, std::span<const double> x, std::span<double> dxdt) {
        const double v1 = x[0], v2 = x[1], il1 = x[2], il2 = x[3];
        const auto [r_t, r_s] = switch_resistances(cfg.sw, t);
        const auto sw = solve_switch(v1, il1, r_t, r_s);
        const double i_n = eval_f(cfg.nonlinear, v1 + v2);
        dxdt[0] = (-i_n - v1 / cfg.R1 - sw.i_t) / cfg.C1;
        dxdt[1] = (-i_n - v2 / cfg.R2 - il2) / cfg.C2;
        dxdt[2] = sw.u / cfg.L1;
        dxdt[3] = (v2 - sync_voltage(cfg.sync, t)) / cfg.L2;
    };

    model.jacobian = [cfg](double t, std::span<const double> x, std::span<double> jac) {
        const double v1 = x[0], v2 = x[1];
        const auto [r_t, r_s] = switch_resistances(cfg.sw, t);
        const double denom = r_t + r_s;
        const double dfdv = eval_dfdv(cfg.nonlinear, v1 + v2);
        std::fill(jac.begin(), jac.end(), 0.0);
        // row 0: dv1'
        jac[0 * 4 + 0] = (-dfdv - 1.0 / cfg.R1 - 1.0 / denom) / cfg.C1;
        jac[0 * 4 + 1] = -dfdv / cfg.C1;
        jac[0 * 4 + 2] = -(r_s / denom) / cfg.C1;
        // row 1: dv2'
        jac[1 * 4 + 0] = -dfdv / cfg.C2;
        jac[1 * 4 + 1] = (-dfdv - 1.0 / cfg.R2) / cfg.C2;
        jac[1 * 4 + 3] = -1.0 / cfg.C2;
        // row 2: diL1'
        jac[2 * 4 + 0] = (r_s / denom) / cfg.L1;
        jac[2 * 4 + 2] = -(r_t * r_s / denom) / cfg.L1;
        // row 3: diL2'
        jac[3 * 4 + 1] = 1.0 / cfg.L2;
    };

    auto deriv = model.derivative;
    auto cap_current = [cfg, deriv](int which, double t, std::span<const double> x) {
        double d[4];
        deriv(t, x, std::span<double>(d, 4));
        return which == 0 ? cfg.C1 * d[0] : cfg.C2 * d[1];
    };

    model.components = {
        {"R1", "resistor", false,
         [cfg](double, std::span<const double> x) {
             return ComponentReadout{x[0], x[0] / cfg.R1};
         },
         nullptr},
        {"C1", "capacitor", true,
         [cap_current](double t, std::span<const double> x) {
             return ComponentReadout{x[0], cap_current(0, t, x)};
         },
         [cfg](double, std::span<const double> x) { return 0.5 * cfg.C1 * x[0] * x[0]; }},
        {"L1", "inductor", true,
         [cfg](double t, std::span<const double> x) {
             const auto [r_t, r_s] = switch_resistances(cfg.sw, t);
             return ComponentReadout{solve_switch(x[0], x[2], r_t, r_s).u, x[2]};
         },
         [cfg](double, std::span<const double> x) { return 0.5 * cfg.L1 * x[2] * x[2]; }},
        {"R2", "resistor", false,
         [cfg](double, std::span<const double> x) {
             return ComponentReadout{x[1], x[1] / cfg.R2};
         },
         nullptr},
        {"C2", "capacitor", true,
         [cap_current](double t, std::span<const double> x) {
             return ComponentReadout{x[1], cap_current(1, t, x)};
         },
         [cfg](double, std::span<const double> x) { return 0.5 * cfg.C2 * x[1] * x[1]; }},
        {"L2", "inductor", true,
         [cfg](double t, std::span<const double> x) {
             return ComponentReadout{x[1] - sync_voltage(cfg.sync, t), x[3]};
         },
         [cfg](double, std::span<const double> x) { return 0.5 * cfg.L2 * x[3] * x[3]; }},
        {"nonlinear", "nonlinear_resistor", false,
         [cfg](double, std::span<const double> x) {
             const double v = x[0] + x[1];
             return ComponentReadout{v, eval_f(cfg.nonlinear, v)};
         },
         nullptr},
        {"sync", "source", false,
         [cfg](double t, std::span<const double> x) {
             return ComponentReadout{sync_voltage(cfg.sync, t), x[3]};
         },
         nullptr},
        {"s1_tank", "switch_path", false,
         [cfg](double t, std::span<const double> x) {
             const auto [r_t, r_s] = switch_resistances(cfg.sw, t);
             const auto sw = solve_switch(x[0], x[2], r_t, r_s);
             return ComponentReadout{x[0] - sw.u, sw.i_t};
         },
         nullptr},
        {"s1_short", "switch_path", false,
         [cfg](double t, std::span<const double> x) {
             const auto [r_t, r_s] = switch_resistances(cfg.sw, t);
             const auto sw = solve_switch(x[0], x[2], r_t, r_s);
             return ComponentReadout{sw.u, sw.i_t - x[2]};
         },
         nullptr},
    };

    for (const auto& w : cfg.sw.schedule) {
        model.events.emplace_back(w.start, "s1:flip");
        model.events.emplace_back(w.start + w.duration, "s1:restore");
    }
    std::sort(model.events.begin(), model.events.end());
    return model;
}

double two_tank_amplitude_estimate(const TwoTankLatchConfig& config) {
    // Balance the fundamental describing function of the tanh branch
    // against the linear losses loading the main tank. The quadratic tails
    // of the nonlinearity carry no fundamental for a centered sinusoid, so
    // they do not enter. Loss includes the off-path of S1 across L1.
    const double g_loss = 1.0 / config.R1 + 1.0 / config.sw.r_off;
    const double k1 = std::abs(config.nonlinear.k1);
    const double k2 = std::abs(config.nonlinear.k2);
    if (k1 * k2 <= g_loss) return 0.0;  // does not oscillate

    auto fundamental = [&](double a) {
        // (2/pi) * Int_0^pi tanh(k2*a*sin(s)) * sin(s) ds
        constexpr int n = 400;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double s = std::numbers::pi * (j + 0.5) / n;
            acc += std::tanh(k2 * a * std::sin(s)) * std::sin(s);
        }
        return (2.0 / std::numbers::pi) * (std::numbers::pi / n) * acc * k1;
    };

    double lo = 0.0, hi = 1.0;
    while (fundamental(hi) > g_loss * hi && hi < 1e3) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (fundamental(mid) > g_loss * mid ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> two_tank_warm_start(const TwoTankLatchConfig& config,
                                        double phase_deg, double amplitude) {
    const double a = amplitude > 0.0 ? amplitude : two_tank_amplitude_estimate(config);
    if (a == 0.0) return {1e-3, 0.0, 0.0, 0.0};
    const double rad = phase_deg * std::numbers::pi / 180.0;
    const double w = 2.0 * std::numbers::pi * config.f_ref;
    return {a * std::cos(rad), 0.0, a / (w * config.L1) * std::sin(rad), 0.0};
}

void RingLatchConfig::validate() const {
    if (n_stages != 3) throw ConfigInvalid("ring latch is fixed at 3 stages");
    if (!(stage_gain > 1.0)) {
        throw ConfigInvalid("stage_gain must be > 1 for sustained oscillation");
    }
    if (!(stage_tau > 0.0)) throw ConfigInvalid("stage_tau must be > 0");
    if (!(sync_amplitude >= 0.0)) throw ConfigInvalid("sync_amplitude must be >= 0");
    if (!(f_sync > 0.0) || f_ref != f_sync / 2.0) {
        throw ConfigInvalid("f_ref must equal f_sync / 2 exactly");
    }
    if (sync_start < 0.0) throw ConfigInvalid("sync_start must be >= 0");
    for (const auto& inj : logic_schedule) {
        if (!(inj.duration > 0.0) || inj.start < 0.0) {
            throw ConfigInvalid("logic injection windows must have start >= 0, duration > 0");
        }
    }
}

CircuitModel build_ring(const RingLatchConfig& config) {
    config.validate();
    const RingLatchConfig cfg = config;

    auto stage_drive = [cfg](double x) {
        return std::tanh(-cfg.stage_gain * x - cfg.stage_asymmetry * x * x);
    };
    auto injection = [cfg](double t) {
        double inj = 0.0;
        if (t >= cfg.sync_start) {
            inj += cfg.sync_amplitude *
                   std::cos(2.0 * std::numbers::pi * cfg.f_sync * t +
                            cfg.sync_phase_deg * std::numbers::pi / 180.0);
        }
        for (const auto& w : cfg.logic_schedule) {
            if (t >= w.start && t < w.start + w.duration) {
                const double ph = w.level == LogicLevel::one ? 0.0 : std::numbers::pi;
                inj += w.amplitude * std::cos(2.0 * std::numbers::pi * cfg.f_ref * t + ph);
            }
        }
        return inj;
    };

    CircuitModel model;
    model.state_names = {"v0", "v1", "v2"};
    model.initial_state = {1e-3, 0.0, 0.0};

    model.derivative = [cfg, stage_drive, injection](double t, std::span<const double> x,
                                                     std::span<double> dxdt) {
        for (int i = 0; i < 3; ++i) {
            const double prev = x[(i + 2) % 3];
            double d = stage_drive(prev) - x[i];
            if (i == 0) d += injection(t);
            dxdt[i] = d / cfg.stage_tau;
        }
    };

    model.jacobian = [cfg](double, std::span<const double> x, std::span<double> jac) {
        std::fill(jac.begin(), jac.end(), 0.0);
        for (int i = 0; i < 3; ++i) {
            const int p = (i + 2) % 3;
            const double arg = -cfg.stage_gain * x[p] - cfg.stage_asymmetry * x[p] * x[p];
            const double th = std::tanh(arg);
            const double darg = -cfg.stage_gain - 2.0 * cfg.stage_asymmetry * x[p];
            jac[i * 3 + i] = -1.0 / cfg.stage_tau;
            jac[i * 3 + p] += (1.0 - th * th) * darg / cfg.stage_tau;
        }
    };

    for (int i = 0; i < 3; ++i) {
        const std::string name = "stage" + std::to_string(i);
        model.components.push_back(Component{
            name, "stage_output", true,
            [i](double, std::span<const double> x) {
                return ComponentReadout{x[i], 0.0};
            },
            [cfg, i](double, std::span<const double> x) {
                return 0.5 * cfg.stage_tau * x[i] * x[i];
            }});
    }

    if (cfg.sync_start > 0.0) model.events.emplace_back(cfg.sync_start, "sync:start");
    for (const auto& w : cfg.logic_schedule) {
        const std::string lbl = std::string("inject:") + to_string(w.level);
        model.events.emplace_back(w.start, lbl + ":start");
        model.events.emplace_back(w.start + w.duration, lbl + ":end");
    }
    std::sort(model.events.begin(), model.events.end());
    return model;
}

} // namespace shilsim
