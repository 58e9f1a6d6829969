// shilsim command line: transient, lockstates, flip, energy, ber, logic.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shilsim/config.hpp"
#include "shilsim/pipelines.hpp"
#include "shilsim/presets.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::string format;
    std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config file (text or JSON)");
    cmd->add_option("--preset", args.preset, "named preset shipped with the tool");
    cmd->add_option("--out", args.out_dir, "output directory (default: out)");
    cmd->add_option("--format", args.format, "output files: csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--seed", args.seed, "RNG seed (ber experiments)");
}

shilsim::ExperimentConfig load_config(const CommonArgs& args, shilsim::ExperimentKind kind) {
    shilsim::ExperimentConfig cfg;
    bool have_base = false;
    if (!args.preset.empty() && args.config_path.empty()) {
        cfg = shilsim::preset_config(args.preset);
        have_base = true;
    } else if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw shilsim::Error("io_error", "cannot read '" + args.config_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        if (!args.preset.empty()) {
            // --preset supplies the base; file keys overlay it.
            text = "preset = " + args.preset + "\n" + text;
        }
        cfg = shilsim::parse_config(text);
        have_base = true;
    }
    if (!have_base) cfg.kind = kind;
    cfg.kind = kind;  // the subcommand decides what runs
    if (args.seed >= 0) cfg.ber.seed = static_cast<std::uint64_t>(args.seed);
    if (!args.out_dir.empty()) cfg.output.dir = args.out_dir;
    if (!args.format.empty()) cfg.output.format = args.format;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-logic oscillator simulation suite"};
    app.require_subcommand(1);
    app.set_version_flag("--version", shilsim::kToolVersion);

    CommonArgs args;
    std::string ratios, trials, netlist, inputs, vectors;

    auto* transient = app.add_subcommand("transient", "time-domain run of a configured circuit");
    add_common(transient, args);
    auto* lockstates = app.add_subcommand("lockstates", "find the two injection-lock states");
    add_common(lockstates, args);
    auto* flip = app.add_subcommand("flip", "half-cycle switch flips with energy audit");
    add_common(flip, args);
    auto* energy = app.add_subcommand("energy", "power/energy accounting of a locked run");
    add_common(energy, args);
    auto* ber = app.add_subcommand("ber", "bit-error-rate analysis, analytic and Monte Carlo");
    add_common(ber, args);
    ber->add_option("--ratios", ratios, "noise/signal ratios, comma separated");
    ber->add_option("--trials", trials, "Monte Carlo trials per grid point");
    auto* logic = app.add_subcommand("logic", "gate-level netlist evaluation and FSM demos");
    add_common(logic, args);
    logic->add_option("--netlist", netlist, "gate netlist file");
    logic->add_option("--inputs", inputs, "input assignment, e.g. a=1,b=0");
    logic->add_option("--vectors", vectors, "JSON file with a sequence of assignments");

    CLI11_PARSE(app, argc, argv);

    try {
        shilsim::ExperimentKind kind = shilsim::ExperimentKind::transient;
        if (lockstates->parsed()) kind = shilsim::ExperimentKind::lockstates;
        else if (flip->parsed()) kind = shilsim::ExperimentKind::flip;
        else if (energy->parsed()) kind = shilsim::ExperimentKind::energy;
        else if (ber->parsed()) kind = shilsim::ExperimentKind::ber;
        else if (logic->parsed()) kind = shilsim::ExperimentKind::logic;

        auto cfg = load_config(args, kind);
        if (ber->parsed()) {
            if (!ratios.empty()) {
                cfg.ber.ratios.clear();
                std::stringstream ss(ratios);
                std::string item;
                while (std::getline(ss, item, ',')) cfg.ber.ratios.push_back(std::stod(item));
            }
            if (!trials.empty()) cfg.ber.trials = static_cast<std::uint64_t>(std::stod(trials));
        }
        if (logic->parsed()) {
            if (!netlist.empty()) cfg.logic.netlist_path = netlist;
            if (!inputs.empty()) cfg.logic.inputs = inputs;
            if (!vectors.empty()) cfg.logic.vectors_path = vectors;
            if (!netlist.empty() || !inputs.empty() || !vectors.empty()) cfg.logic.demo.clear();
        }
        shilsim::run_experiment(cfg, std::cout);
        return 0;
    } catch (const shilsim::Error& e) {
        std::cerr << "error [" << e.kind() << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
