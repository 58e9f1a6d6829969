#include "shilsim/presets.hpp"

namespace shilsim {

namespace {

constexpr double kTwoTankRef = 5.0328e6;
constexpr double kTwoTankPeriod = 1.0 / kTwoTankRef;

ExperimentConfig two_tank_base() {
    ExperimentConfig c;
    c.kind = ExperimentKind::lockstates;
    c.two_tank.emplace();  // calibrated reference latch
    c.integrator.method = IntegratorMethod::rk4_fixed;
    c.integrator.step = kTwoTankPeriod / 512.0;
    c.integrator.capture_stride = 2;
    c.analysis.settle_cycles = 40000;
    c.analysis.analysis_cycles = 120;
    c.analysis.warm_start_phase_deg = 57.0;
    c.analysis.warm_start_amplitude = 1.25;
    c.analysis.signal = "v1";
    return c;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"paper-two-tank", "paper-flip-demo", "ring-demo", "fsm-demo"};
}

ExperimentConfig preset_config(std::string_view name) {
    if (name == "paper-two-tank") {
        ExperimentConfig c = two_tank_base();
        c.preset = "paper-two-tank";
        return c;
    }
    if (name == "paper-flip-demo") {
        ExperimentConfig c = two_tank_base();
        c.preset = "paper-flip-demo";
        c.kind = ExperimentKind::flip;
        // Three half-cycle actuations. The audit needs settled cycles on
        // both sides of every flip, so they sit 30 REF cycles apart.
        c.flip_offsets = {0.27e-6, 0.27e-6 + 30 * kTwoTankPeriod,
                          0.27e-6 + 60 * kTwoTankPeriod};
        return c;
    }
    if (name == "ring-demo") {
        ExperimentConfig c;
        c.preset = "ring-demo";
        c.kind = ExperimentKind::transient;
        c.ring.emplace();
        const double T = 1.0 / c.ring->f_ref;
        c.ring->sync_start = 2 * T;
        c.ring->logic_schedule = {{LogicLevel::one, 40 * T, T, 1.6},
                                  {LogicLevel::zero, 110 * T, T, 1.6}};
        c.transient_cycles = 230;
        c.integrator.method = IntegratorMethod::rk4_fixed;
        c.integrator.step = c.ring->stage_tau / 60.0;
        c.integrator.capture_stride = 1;
        c.analysis.signal = "v0";
        c.analysis.lock_threshold_deg = 2.0;
        c.analysis.tail_fraction = 0.2;
        return c;
    }
    if (name == "fsm-demo") {
        ExperimentConfig c;
        c.preset = "fsm-demo";
        c.kind = ExperimentKind::logic;
        c.logic.demo = "serial-adder";
        c.logic.a_value = 19;
        c.logic.b_value = 46;
        c.logic.n_bits = 6;
        return c;
    }
    throw ConfigInvalid("unknown preset '" + std::string(name) + "'");
}

} // namespace shilsim
