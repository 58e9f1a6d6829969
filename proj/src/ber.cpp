#include "shilsim/ber.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace shilsim {

const char* to_string(Encoding e) { return e == Encoding::level ? "level" : "phase"; }

void NoiseScenario::validate() const {
    if (!(signal > 0.0)) throw ConfigInvalid("signal amplitude must be > 0");
    if (!(noise >= 0.0)) throw ConfigInvalid("noise amplitude must be >= 0");
    if (trials < 1) throw ConfigInvalid("trials must be >= 1");
}

double analytic_ber(const NoiseScenario& sc) {
    sc.validate();
    const double s = sc.signal, n = sc.noise;
    if (sc.encoding == Encoding::level) {
        if (n < s) return 0.0;
        if (n > s) return 0.5;
        return 0.25;
    }
    if (n <= s) return 0.0;
    return std::acos(s / n) / std::numbers::pi;
}

namespace {

// splitmix64; used to give every sweep cell an independent substream.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; stable across platforms.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

BerResult monte_carlo_ber(const NoiseScenario& sc) {
    sc.validate();
    std::mt19937_64 rng(mix(sc.seed));
    std::uint64_t errors = 0;
    for (std::uint64_t k = 0; k < sc.trials; ++k) {
        double value;
        if (sc.encoding == Encoding::level) {
            const bool plus = (rng() & 1u) != 0;
            value = sc.signal + (plus ? sc.noise : -sc.noise);
        } else {
            const double theta = 2.0 * std::numbers::pi * uniform01(rng);
            value = sc.signal + sc.noise * std::cos(theta);
        }
        if (value < 0.0) {
            ++errors;
        } else if (value == 0.0 && (rng() & 1u) != 0) {
            ++errors;  // boundary tie: error half the time
        }
    }
    BerResult out;
    out.analytic = analytic_ber(sc);
    out.trials = sc.trials;
    out.errors = errors;
    out.empirical = static_cast<double>(errors) / static_cast<double>(sc.trials);
    out.half_width_95 =
        1.96 * std::sqrt(out.empirical * (1.0 - out.empirical) / static_cast<double>(sc.trials));
    return out;
}

std::vector<BerSweepRow> ber_sweep(const std::vector<Encoding>& encodings,
                                   const std::vector<double>& ratios,
                                   std::uint64_t trials, std::uint64_t seed, double signal) {
    if (ratios.empty()) throw ConfigInvalid("ber sweep needs a nonempty ratio grid");
    std::vector<BerSweepRow> rows;
    std::uint64_t cell = 0;
    for (const auto enc : encodings) {
        for (const double r : ratios) {
            if (r < 0.0) throw ConfigInvalid("noise/signal ratios must be >= 0");
            NoiseScenario sc;
            sc.signal = signal;
            sc.noise = r * signal;
            sc.encoding = enc;
            sc.trials = trials;
            sc.seed = mix(seed ^ mix(cell));
            rows.push_back({enc, r, monte_carlo_ber(sc)});
            ++cell;
        }
    }
    return rows;
}

} // namespace shilsim
