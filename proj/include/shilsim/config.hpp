#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shilsim/ber.hpp"
#include "shilsim/circuit.hpp"
#include "shilsim/transient.hpp"

namespace shilsim {

enum class ExperimentKind { transient, lockstates, flip, energy, ber, logic };

const char* to_string(ExperimentKind k);
ExperimentKind experiment_kind_from(const std::string& name);  // throws ConfigInvalid

/// Knobs shared by the lock/energy/flip pipelines.
struct AnalysisOptions {
    double lock_threshold_deg = 1.0;
    double tail_fraction = 0.5;
    double settle_cycles = 2000.0;
    double analysis_cycles = 120.0;
    int samples_per_cycle = 256;
    double warm_start_phase_deg = 0.0;
    double warm_start_amplitude = 0.0;  // 0: describing-function estimate
    double energy_neutral_frac = 0.05;
    double flip_audit_cycles = 5.0;
    double relock_margin_cycles = 3.0;
    double separation_tol_deg = 2.0;
    std::string signal = "v1";
};

struct BerOptions {
    std::vector<double> ratios{0.5, 1.5, 2.0, 10.0};
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    std::vector<Encoding> encodings{Encoding::level, Encoding::phase};
    double signal = 1.0;
};

struct LogicOptions {
    std::string netlist_path;
    std::string inputs;        // "a=1, b=0"
    std::string vectors_path;  // JSON array of input assignments
    std::string demo;          // "serial-adder" runs the FSM demo
    std::uint64_t a_value = 19;
    std::uint64_t b_value = 46;
    int n_bits = 6;
};

struct OutputOptions {
    std::string dir = "out";
    std::string format = "both";  // csv | json | both
};

/// One experiment, fully described. Parsed from the line-oriented config
/// format (or its JSON encoding) and validated; unknown keys are rejected
/// with their location.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::lockstates;
    std::string preset;  // name echo when built from a preset
    std::optional<TwoTankLatchConfig> two_tank;
    std::optional<RingLatchConfig> ring;
    IntegratorConfig integrator{};
    double transient_cycles = 200.0;
    AnalysisOptions analysis{};
    BerOptions ber{};
    LogicOptions logic{};
    std::vector<double> flip_offsets;  // s, relative to the settled analysis origin
    OutputOptions output{};

    void validate() const;  // throws MissingRequired / ConfigInvalid
};

/// Parses the key/value config text (strict: unknown keys, wrong units and
/// malformed values are diagnosed with line/column). Text starting with
/// '{' is treated as the JSON encoding of the same schema.
ExperimentConfig parse_config(std::string_view text);

/// Canonical serializer; parse_config(render_config(c)) round-trips.
std::string render_config(const ExperimentConfig& config);

} // namespace shilsim
