#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shilsim/device.hpp"
#include "shilsim/phasor.hpp"

namespace shilsim {

struct ComponentReadout {
    double v = 0.0;  // V
    double i = 0.0;  // A, passive sign convention: p = v*i > 0 dissipates
};

/// One circuit element with a branch readout. Storage elements (kind
/// "capacitor"/"inductor") also expose their instantaneous stored energy.
struct Component {
    std::string name;
    std::string kind;
    bool stores_energy = false;
    std::function<ComponentReadout(double t, std::span<const double> x)> readout;
    std::function<double(double t, std::span<const double> x)> energy;  // storage only
};

/// State-space description of a concrete oscillator circuit. Immutable
/// after construction; derivative evaluation has no shared mutable state,
/// so a model may be integrated from several threads independently.
struct CircuitModel {
    std::vector<std::string> state_names;
    std::function<void(double t, std::span<const double> x, std::span<double> dxdt)> derivative;
    /// Optional analytic Jacobian, row-major dimension x dimension.
    std::function<void(double t, std::span<const double> x, std::span<double> jac)> jacobian;
    std::vector<Component> components;
    std::vector<double> initial_state;
    /// Times at which the vector field switches branch (switch flips,
    /// injection window edges). Integration steps must not straddle these.
    std::vector<std::pair<double, std::string>> events;

    std::size_t dimension() const { return state_names.size(); }
    double stored_energy(double t, std::span<const double> x) const;
    const Component& component(const std::string& name) const;  // throws UnknownComponent
};

/// Instantaneous power absorbed by a named component (passive convention).
double component_power(const CircuitModel& model, const std::string& name,
                       double t, std::span<const double> state);

/// Two-tank LC phase latch: main tank (L1, C1, R1) in series with a second
/// tank (L2, C2, R2) tuned to f_sync, the nonlinear resistor across the
/// stack, the SYNC source in series with L2, and the changeover switch S1
/// on L1 for half-cycle bit flips.
/// Defaults are the calibrated operating point of the reference latch:
/// the main tank runs at 5.0329 MHz, the sub-harmonic injection captures
/// the ~7 Hz detuned oscillator, and the locked amplitude stores 0.83 uJ
/// in C1. The capacitor trim (+44.5 ppm) sets the detuning; k3 and the
/// knee shape the even coupling that carries the lock torque.
struct TwoTankLatchConfig {
    double L1 = 1e-9;          // H
    double C1 = 1.0000445e-6;  // F
    double R1 = 100.0;         // Ohm
    double L2 = 0.5e-9;        // H
    double C2 = 0.5e-6;        // F
    double R2 = 10.0;          // Ohm
    NonlinearResistorParams nonlinear{1.0 / 30.0, 0.0102 * 30.0, 0.048, 0.02,
                                      NonlinearPolarity::supplying};
    SyncSourceParams sync{1e-2 / 30.0, 2.0 * 5.0328e6, 0.0};
    SwitchParams sw{0.0, 10e3, {}};  // S1: ideal on-path, 10 kOhm off-path
    double f_ref = 5.0328e6;         // Hz; must equal sync.f_sync / 2

    void validate() const;
};

CircuitModel build_two_tank(const TwoTankLatchConfig& config);

/// Estimate of the free-running oscillation amplitude of the main tank
/// (describing-function balance of the tanh term against the tank losses).
/// Used to warm-start transients near the limit cycle.
double two_tank_amplitude_estimate(const TwoTankLatchConfig& config);

/// State vector placed on the main-tank orbit at the given fundamental
/// phase (degrees vs a cosine REF). Amplitude 0 means the describing-
/// function estimate.
std::vector<double> two_tank_warm_start(const TwoTankLatchConfig& config,
                                        double phase_deg = 0.0, double amplitude = 0.0);

/// One scheduled logic injection into the ring: a current at f_ref whose
/// phase encodes the level, active on [start, start + duration).
struct RingInjection {
    LogicLevel level = LogicLevel::one;
    double start = 0.0;
    double duration = 0.0;
    double amplitude = 0.0;
};

/// Behavioral three-stage inverter ring with SYNC current injection for
/// sub-harmonic locking and scheduled logic injections, all at stage 1.
/// Stage dynamics: tau*dv_i/dt = tanh(-gain*v_prev - asymmetry*v_prev^2) - v_i.
/// The quadratic term inside the tanh models the pull-up/pull-down
/// asymmetry of a real inverter; without it the stage transfer is odd and
/// second-harmonic injection cannot steer the fundamental phase.
struct RingLatchConfig {
    int n_stages = 3;            // fixed
    double stage_gain = 5.0;
    double stage_tau = 100e-12;  // s
    double stage_asymmetry = 3.0;
    double sync_amplitude = 0.9;
    double f_sync = 2.0 * 3.064e9;  // Hz
    double sync_phase_deg = 131.0;  // rotates the two lock phases by half this
    double sync_start = 0.0;        // s
    std::vector<RingInjection> logic_schedule;
    double f_ref = 3.064e9;  // Hz; must equal f_sync / 2

    void validate() const;
};

CircuitModel build_ring(const RingLatchConfig& config);

} // namespace shilsim
