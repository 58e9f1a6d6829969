#include "shilsim/phasor.hpp"

#include <cmath>
#include <numbers>

namespace shilsim {

namespace {
constexpr double kDegPerRad = 180.0 / std::numbers::pi;
}

const char* to_string(LogicLevel x) { return x == LogicLevel::one ? "1" : "0"; }

double wrap_degrees(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    // fmod can yield exactly 360.0 after the correction when deg is a tiny
    // negative number.
    if (w >= 360.0) w -= 360.0;
    return w;
}

double angle_difference_deg(double a, double b) {
    double d = std::fmod(a - b, 360.0);
    if (d <= -180.0) d += 360.0;
    if (d > 180.0) d -= 360.0;
    return d;
}

Phasor Phasor::from_polar(double amplitude, double phase_deg) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw ConfigInvalid("phasor amplitude must be finite and nonnegative");
    }
    return Phasor{amplitude, wrap_degrees(phase_deg)};
}

Phasor Phasor::from_rect(std::complex<double> z) {
    const double amplitude = std::abs(z);
    if (amplitude == 0.0) return Phasor{0.0, 0.0};
    return Phasor{amplitude, wrap_degrees(std::arg(z) * kDegPerRad)};
}

std::complex<double> Phasor::rect() const {
    const double rad = phase_deg / kDegPerRad;
    return {amplitude * std::cos(rad), amplitude * std::sin(rad)};
}

Phasor encode(LogicLevel level) {
    return Phasor{1.0, level == LogicLevel::one ? 0.0 : 180.0};
}

Phasor phasor_not(const Phasor& p) {
    return Phasor{p.amplitude, wrap_degrees(p.phase_deg + 180.0)};
}

Phasor phasor_maj3(const Phasor& a, const Phasor& b, const Phasor& c,
                   const Maj3Options& options) {
    const std::complex<double> sum = a.rect() + b.rect() + c.rect();
    const double amplitude = std::abs(sum);
    if (amplitude < options.degenerate_epsilon) {
        throw DegenerateSum("majority sum amplitude " + std::to_string(amplitude) +
                            " below epsilon; inputs are metastable");
    }
    Phasor out = Phasor::from_rect(sum);
    if (out.amplitude > 1.0) out.amplitude = 1.0;
    return out;
}

LogicLevel classify(const Phasor& p, double ref_phase_deg, const ClassifyOptions& options) {
    if (p.amplitude <= options.amplitude_epsilon) {
        throw AmplitudeTooSmall("phasor amplitude " + std::to_string(p.amplitude) +
                                " too small to classify");
    }
    const double d = std::abs(angle_difference_deg(p.phase_deg, ref_phase_deg));
    if (std::abs(d - 90.0) <= options.guard_band_deg) {
        throw MetastablePhase("phase " + std::to_string(p.phase_deg) +
                              " deg lies within the guard band around the +-90 deg threshold");
    }
    return d < 90.0 ? LogicLevel::one : LogicLevel::zero;
}

} // namespace shilsim
