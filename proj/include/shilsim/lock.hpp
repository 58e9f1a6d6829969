#pragma once

#include <optional>
#include <string>

#include "shilsim/circuit.hpp"
#include "shilsim/trace.hpp"
#include "shilsim/transient.hpp"

namespace shilsim {

/// Phase of the fundamental Fourier coefficient over one REF period,
/// relative to a cosine reference at phase 0.
struct PhaseSample {
    double t_center = 0.0;
    double phase_deg = 0.0;  // [0, 360)
    double amplitude = 0.0;
    double window = 0.0;  // s
};

/// Windowed fundamental of `signal` over [t0, t0 + 1/f_ref] by trapezoidal
/// quadrature. Throws WindowOutOfRange if the trace does not cover the
/// window, TooShort for fewer than 32 samples in it, AmplitudeTooSmall if
/// the fundamental amplitude falls below epsilon.
PhaseSample extract_phase(const WaveformTrace& trace, const std::string& signal,
                          double f_ref, double t0, double amplitude_epsilon = 1e-9);

struct LockDetectOptions {
    double threshold_deg = 1.0;  // max phase excursion over the tail
    double amplitude_epsilon = 1e-9;
    ClassifyOptions classify{};
    int min_windows = 20;
};

struct LockReport {
    bool locked = false;
    double lock_phase_deg = 0.0;
    double drift_deg_per_cycle = 0.0;
    double excursion_deg = 0.0;
    double amplitude = 0.0;
    std::optional<LogicLevel> classified_bit;  // nullopt = unresolved
    std::optional<double> settle_time;         // s, nullopt if never settled
};

/// Computes phase samples on consecutive REF periods over the trace and
/// judges lock from the tail: locked iff the max excursion over the tail
/// windows stays below the threshold.
LockReport detect_lock(const WaveformTrace& trace, const std::string& signal,
                       double f_ref, double tail_fraction = 0.5,
                       const LockDetectOptions& options = {});

struct FindLockOptions {
    IntegratorConfig integrator{};   // method and tolerances; times are managed internally
    std::vector<double> initial;     // empty: use the model's initial state
    std::string signal = "v1";
    double settle_time = 0.0;        // s before the first lock probe
    double extension_time = 0.0;     // s added per retry (default: settle_time)
    int max_extensions = 3;
    double analysis_cycles = 120.0;  // dense window used for detection
    double tail_fraction = 0.5;
    int samples_per_cycle = 256;
    LockDetectOptions detect{};
    double separation_tol_deg = 2.0;
};

struct LockState {
    LockReport report;
    WaveformTrace trace;
    std::vector<double> final_state;
    double t_end = 0.0;
};

struct LockStatePair {
    LockState state_a;
    LockState state_b;
    double separation_deg = 0.0;
};

/// Finds the two sub-harmonic lock states of a latch model: settles one
/// transient into lock, then re-runs with the settled state delayed by
/// half a REF period, which lands on the complementary state (the SYNC
/// drive is invariant under that shift). Throws LockNotFound if either
/// run fails to lock and DegenerateStates if the two phases are not
/// complementary.
LockStatePair find_lock_states(const CircuitModel& model, double f_ref,
                               const FindLockOptions& options);

} // namespace shilsim
