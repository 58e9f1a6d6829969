#pragma once

#include <complex>

#include "shilsim/errors.hpp"

namespace shilsim {

/// Boolean logic state carried by the phase of an oscillatory signal.
/// ONE is in phase with REF (0 deg), ZERO is in antiphase (180 deg).
enum class LogicLevel { zero, one };

inline LogicLevel logic_not(LogicLevel x) {
    return x == LogicLevel::one ? LogicLevel::zero : LogicLevel::one;
}
inline int logic_to_int(LogicLevel x) { return x == LogicLevel::one ? 1 : 0; }
inline LogicLevel logic_from_int(int v) { return v ? LogicLevel::one : LogicLevel::zero; }
const char* to_string(LogicLevel x);

/// Complex amplitude-and-phase value. Amplitude is dimensionless
/// (normalized to the REF amplitude); phase is degrees in [0, 360).
struct Phasor {
    double amplitude = 0.0;
    double phase_deg = 0.0;

    static Phasor from_polar(double amplitude, double phase_deg);
    static Phasor from_rect(std::complex<double> z);
    std::complex<double> rect() const;
};

/// Normalizes an angle in degrees to [0, 360).
double wrap_degrees(double deg);
/// Signed angular separation a - b mapped to (-180, 180].
double angle_difference_deg(double a, double b);

/// Maps a logic level to its canonical phasor: amplitude 1, phase 0 (ONE)
/// or 180 (ZERO).
Phasor encode(LogicLevel level);

/// Arithmetic negation: same amplitude, phase shifted by 180 degrees.
Phasor phasor_not(const Phasor& p);

struct Maj3Options {
    double degenerate_epsilon = 1e-9;
};

/// 3-input majority by complex addition followed by amplitude limiting:
/// sums the inputs, then renormalizes to amplitude 1 (phase preserved) if
/// the sum exceeds 1. Throws DegenerateSum when the sum amplitude falls
/// below the epsilon (metastable / undefined majority).
Phasor phasor_maj3(const Phasor& a, const Phasor& b, const Phasor& c,
                   const Maj3Options& options = {});

struct ClassifyOptions {
    double guard_band_deg = 1.0;
    double amplitude_epsilon = 1e-9;
};

/// Decides the logic level of a phasor against a reference phase: ONE if
/// within 90 deg of ref_phase, ZERO if within 90 deg of ref_phase + 180.
/// Throws MetastablePhase inside the guard band around the +-90 deg
/// thresholds and AmplitudeTooSmall for near-zero amplitude.
LogicLevel classify(const Phasor& p, double ref_phase_deg,
                    const ClassifyOptions& options = {});

} // namespace shilsim
