#pragma once

#include <cstdint>
#include <vector>

#include "shilsim/errors.hpp"

namespace shilsim {

enum class Encoding { level, phase };

const char* to_string(Encoding e);

/// Fixed-amplitude additive noise against a fixed signal: for `level` the
/// noise is +-n with equal probability on a signal +s (decision threshold
/// at zero); for `phase` the noise is a phasor of amplitude n with phase
/// uniform on [0, 360) against the signal phasor (s, 0) (decision
/// thresholds at +-90 degrees).
struct NoiseScenario {
    double signal = 1.0;
    double noise = 0.0;
    Encoding encoding = Encoding::phase;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Closed-form bit error probability.
///   level: 0 for n < s, 1/2 for n > s, 1/4 at n = s (the boundary tie
///          cancels the signal and is counted as an error half the time).
///   phase: 0 for n <= s, arccos(s/n)/pi for n > s.
double analytic_ber(const NoiseScenario& scenario);

struct BerResult {
    double analytic = 0.0;
    double empirical = 0.0;
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double half_width_95 = 0.0;
};

/// Monte Carlo estimate with the same decision rules; deterministic for a
/// fixed seed.
BerResult monte_carlo_ber(const NoiseScenario& scenario);

struct BerSweepRow {
    Encoding encoding;
    double n_over_s = 0.0;
    BerResult result;
};

/// One BerResult per (encoding, noise/signal ratio). Each cell draws from
/// its own deterministic substream of the seed, so the table is
/// reproducible regardless of evaluation order.
std::vector<BerSweepRow> ber_sweep(const std::vector<Encoding>& encodings,
                                   const std::vector<double>& ratios,
                                   std::uint64_t trials, std::uint64_t seed,
                                   double signal = 1.0);

} // namespace shilsim
