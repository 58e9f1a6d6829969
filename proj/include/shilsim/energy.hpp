#pragma once

#include <string>
#include <vector>

#include "shilsim/circuit.hpp"
#include "shilsim/trace.hpp"

namespace shilsim {

struct EnergyReportOptions {
    double tail_cycles = 10.0;  // cycles used for per-cycle statistics
    std::string main_tank_component = "C1";
    std::string supply_component = "nonlinear";
};

/// Power and energy bookkeeping over a locked run. The Q convention here
/// is stored energy divided by energy dissipated per cycle (no 2*pi);
/// `q_standard` additionally reports the 2*pi form.
struct EnergyReport {
    std::vector<double> times;  // aligned with the columns below
    std::vector<std::string> component_names;
    std::vector<std::vector<double>> cumulative_energy;  // J, per component
    std::vector<double> stored_energy;                   // J
    std::vector<double> net_energy;  // J, supplied minus dissipated (non-storage)
    double peak_main_tank_energy = 0.0;
    double per_cycle_dissipation = 0.0;  // energy supplied by the nonlinearity per cycle
    double per_cycle_loss = 0.0;         // energy absorbed by the dissipating components
    double q_effective = 0.0;
    double q_standard = 0.0;
    std::vector<double> net_energy_zero_crossings;
};

EnergyReport energy_report(const WaveformTrace& trace, const CircuitModel& model,
                           double f_ref, const EnergyReportOptions& options = {});

struct FlipWindow {
    double start = 0.0;
    double end = 0.0;
};

struct FlipAuditOptions {
    double threshold_frac = 0.05;     // of per-cycle dissipation
    double window_cycles = 5.0;       // averaging span before and after
    double post_settle_cycles = 3.0;  // re-lock margin skipped after the flip
    std::string supply_component = "nonlinear";
    std::string main_tank_component = "C1";
};

struct FlipVerdict {
    FlipWindow window;
    double excess_energy = 0.0;  // J; post-settled minus pre-settled net average
    double per_cycle_dissipation = 0.0;
    bool energy_neutral = false;
    bool net_crossed_zero_after = false;
};

/// Verdict per switch actuation: a flip is ENERGY_NEUTRAL when the tanks'
/// net energy balance shifts by less than the threshold across it.
std::vector<FlipVerdict> flip_energy_audit(const WaveformTrace& trace,
                                           const CircuitModel& model, double f_ref,
                                           const std::vector<FlipWindow>& flips,
                                           const FlipAuditOptions& options = {});

} // namespace shilsim
