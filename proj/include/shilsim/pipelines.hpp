#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "shilsim/config.hpp"
#include "shilsim/energy.hpp"
#include "shilsim/lock.hpp"

namespace shilsim {

inline constexpr const char* kToolVersion = "0.1.0";

struct ProducedFile {
    std::string path;
    std::uint64_t bytes = 0;
    std::string fnv64;  // content hash, FNV-1a
};

/// Record of one experiment run: config echo, produced files with content
/// hashes, and the summary verdicts. Serialized as manifest.json.
struct RunManifest {
    std::string kind;
    std::string preset;
    std::string tool_version = kToolVersion;
    double wall_seconds = 0.0;
    std::vector<ProducedFile> files;
    nlohmann::json summary;
    std::string config_echo;

    nlohmann::json to_json() const;
};

/// Executes the configured experiment end to end: build, integrate,
/// analyze, serialize. Writes outputs under config.output.dir and prints a
/// short summary to `log`.
RunManifest run_experiment(const ExperimentConfig& config, std::ostream& log);

// Pieces reused by the acceptance suite.

/// Result of the two-tank flip pipeline for one actuation.
struct FlipResult {
    FlipWindow window;
    double phase_before_deg = 0.0;
    double phase_after_deg = 0.0;
    double phase_change_deg = 0.0;
    double relock_cycles = -1.0;
    FlipVerdict audit;
};

struct FlipRun {
    std::vector<FlipResult> flips;
    WaveformTrace trace;
    double trace_origin = 0.0;
    double per_cycle_dissipation = 0.0;
};

/// Settles the latch into lock, aligns each requested offset to the
/// nearest main-tank zero crossing, applies the half-cycle actuations and
/// audits every flip.
FlipRun run_flip_experiment(const ExperimentConfig& config);

/// find_lock_states with options derived from the experiment config.
LockStatePair run_lockstates_experiment(const ExperimentConfig& config);

nlohmann::json lock_report_json(const LockReport& rep);
nlohmann::json energy_report_json(const EnergyReport& rep);

} // namespace shilsim
