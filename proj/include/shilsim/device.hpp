#pragma once

#include <utility>
#include <vector>

#include "shilsim/errors.hpp"

namespace shilsim {

/// Wiring polarity of the nonlinear resistor. `supplying` means the branch
/// presents negative differential conductance -k1*k2 at v = 0 (it powers
/// the tanks); `as_written` is the raw characteristic with positive slope.
enum class NonlinearPolarity { supplying, as_written };

/// Nonlinear resistor i = k1*tanh(k2*v) + g(v), where g(v) vanishes on
/// [-knee, knee] and grows as k3^2*(|v| - knee)^2 outside. The tanh term
/// sets the oscillation amplitude; the quadratic tails break the odd
/// symmetry of the branch so that second-harmonic content of v couples
/// into the fundamental (the mechanism behind sub-harmonic locking).
struct NonlinearResistorParams {
    double k1 = 1.0 / 30.0;      // A
    double k2 = 0.0102 * 30.0;   // 1/V
    double k3 = 40.0 * 0.0102;   // sqrt(A)/V
    double knee = 0.9;           // V
    NonlinearPolarity polarity = NonlinearPolarity::supplying;

    void validate() const;
};

/// Branch current at voltage v (A). With polarity `supplying` the value is
/// the passive-convention current, i.e. the negated characteristic.
double eval_f(const NonlinearResistorParams& params, double v);

/// Exact analytic derivative of eval_f; continuous across v = +-knee.
double eval_dfdv(const NonlinearResistorParams& params, double v);

struct SyncSourceParams {
    double amplitude = 1e-3 / 30.0;  // V
    double f_sync = 2.0 * 5.0328e6;  // Hz
    double phase_offset_deg = 0.0;

    void validate() const;
};

double sync_voltage(const SyncSourceParams& params, double t);

/// One momentary actuation of the changeover switch: [start, start + duration).
struct ActuationWindow {
    double start = 0.0;
    double duration = 0.0;
};

/// SPDT switch realized as two resistive paths: one connecting the
/// inductor to its tank, one shorting the inductor. Exactly one path is
/// "on" at any time; actuation windows flip which.
struct SwitchParams {
    double r_on = 1e-3;   // Ohm; may be exactly 0 for an ideal short
    double r_off = 10e3;  // Ohm
    std::vector<ActuationWindow> schedule;

    void validate() const;
};

/// (r_path_tank, r_path_short) at time t. Outside all actuation windows the
/// tank path is on: (r_on, r_off). Inside a window the positions flip:
/// (r_off, r_on). Windows are closed-open: [start, start + duration).
std::pair<double, double> switch_resistances(const SwitchParams& params, double t);

/// True when t lies inside an actuation window.
bool switch_actuated(const SwitchParams& params, double t);

struct StartupCheck {
    bool satisfied = false;
    double upper_bound = 0.0;           // 1/r2
    double negative_conductance = 0.0;  // |k1*k2|
    double lower_bound = 0.0;           // 1/r1
};

/// Start-up condition for natural oscillation: the peak negative
/// differential conductance must overcome the main-tank loss but not the
/// second-tank loss, 1/r2 > |k1*k2| > 1/r1.
StartupCheck check_startup_condition(const NonlinearResistorParams& params,
                                     double r1, double r2);

} // namespace shilsim
