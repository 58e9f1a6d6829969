#pragma once

#include "shilsim/circuit.hpp"
#include "shilsim/trace.hpp"

namespace shilsim {

enum class IntegratorMethod { rk4_fixed, trap_implicit };

/// Integration setup. A positive `step` selects fixed-step operation;
/// otherwise the trapezoidal method adapts its step to (rel_tol, abs_tol)
/// by step doubling. RK4 always requires a fixed step.
struct IntegratorConfig {
    IntegratorMethod method = IntegratorMethod::trap_implicit;
    double t_start = 0.0;
    double t_stop = 0.0;
    double step = 0.0;       // s; > 0 means fixed step
    double rel_tol = 1e-6;
    double abs_tol = 1e-9;
    double max_step = 0.0;   // s; 0 = no cap (adaptive only)
    int capture_stride = 1;  // record every Nth accepted step
    bool capture_components = true;

    void validate() const;
};

/// Integrates the model over [t_start, t_stop]. Steps are split exactly at
/// the model's event times, which therefore appear verbatim in the trace.
WaveformTrace integrate(const CircuitModel& model, const IntegratorConfig& config,
                        std::vector<double> initial);

/// Advances `state` from time t exactly to t_event (no capture).
std::vector<double> step_to_event(const CircuitModel& model, const IntegratorConfig& config,
                                  std::vector<double> state, double t, double t_event);

} // namespace shilsim
