#include "shilsim/pipelines.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shilsim/ber.hpp"
#include "shilsim/logic.hpp"
#include "shilsim/netlist.hpp"
#include "shilsim/transient.hpp"

namespace shilsim {

namespace fs = std::filesystem;

namespace {

std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ProducedFile write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io_error", "cannot write '" + path.string() + "'");
    out << content;
    out.close();
    return {path.string(), content.size(), fnv1a64(content)};
}

std::string csv_string(const WaveformTrace& trace) {
    std::ostringstream out;
    out << "time";
    for (const auto& n : trace.names) out << ',' << n;
    out << '\n';
    char buf[32];
    for (std::size_t s = 0; s < trace.sample_count(); ++s) {
        std::snprintf(buf, sizeof buf, "%.17g", trace.times[s]);
        out << buf;
        for (const auto& col : trace.columns) {
            std::snprintf(buf, sizeof buf, "%.17g", col[s]);
            out << ',' << buf;
        }
        out << '\n';
    }
    return out.str();
}

const char* level_name(std::optional<LogicLevel> v) {
    if (!v) return "unresolved";
    return *v == LogicLevel::one ? "1" : "0";
}

CircuitModel build_circuit(const ExperimentConfig& cfg) {
    if (cfg.two_tank) return build_two_tank(*cfg.two_tank);
    return build_ring(*cfg.ring);
}

double circuit_f_ref(const ExperimentConfig& cfg) {
    return cfg.two_tank ? cfg.two_tank->f_ref : cfg.ring->f_ref;
}

IntegratorConfig dense_integrator(const ExperimentConfig& cfg, double f_ref) {
    IntegratorConfig ic = cfg.integrator;
    const double period = 1.0 / f_ref;
    if (ic.step > 0.0) {
        ic.capture_stride = std::max(
            1, static_cast<int>(std::floor(period / ic.step / cfg.analysis.samples_per_cycle)));
    } else {
        ic.max_step = period / cfg.analysis.samples_per_cycle;
        ic.capture_stride = 1;
    }
    return ic;
}

std::vector<double> warm_start(const ExperimentConfig& cfg) {
    if (cfg.two_tank) {
        return two_tank_warm_start(*cfg.two_tank, cfg.analysis.warm_start_phase_deg,
                                   cfg.analysis.warm_start_amplitude);
    }
    return build_ring(*cfg.ring).initial_state;
}

FindLockOptions lock_options(const ExperimentConfig& cfg) {
    FindLockOptions opt;
    opt.integrator = cfg.integrator;
    opt.initial = warm_start(cfg);
    opt.signal = cfg.analysis.signal;
    const double period = 1.0 / circuit_f_ref(cfg);
    opt.settle_time = cfg.analysis.settle_cycles * period;
    opt.analysis_cycles = cfg.analysis.analysis_cycles;
    opt.tail_fraction = cfg.analysis.tail_fraction;
    opt.samples_per_cycle = cfg.analysis.samples_per_cycle;
    opt.detect.threshold_deg = cfg.analysis.lock_threshold_deg;
    opt.separation_tol_deg = cfg.analysis.separation_tol_deg;
    return opt;
}

} // namespace

LockStatePair run_lockstates_experiment(const ExperimentConfig& cfg) {
    const auto model = build_circuit(cfg);
    return find_lock_states(model, circuit_f_ref(cfg), lock_options(cfg));
}

FlipRun run_flip_experiment(const ExperimentConfig& cfg) {
    const auto& tt = *cfg.two_tank;
    const double f_ref = tt.f_ref;
    const double period = 1.0 / f_ref;
    const auto& an = cfg.analysis;

    auto base_model = build_two_tank(tt);
    IntegratorConfig raw = cfg.integrator;
    raw.capture_components = false;

    // Settle into lock.
    auto x = warm_start(cfg);
    const double t0 = an.settle_cycles * period;
    x = step_to_event(base_model, raw, std::move(x), 0.0, t0);

    // Locate the rising zero-crossing grid of the main tank voltage.
    IntegratorConfig probe_cfg = dense_integrator(cfg, f_ref);
    probe_cfg.capture_components = false;
    probe_cfg.t_start = t0;
    probe_cfg.t_stop = t0 + 4 * period;
    const auto probe = integrate(base_model, probe_cfg, x);
    const auto& pv = probe.column(an.signal);
    double t_cross = -1.0;
    for (std::size_t i = 1; i < probe.times.size(); ++i) {
        if (pv[i - 1] <= 0.0 && pv[i] > 0.0) {
            t_cross = probe.times[i - 1] +
                      pv[i - 1] / (pv[i - 1] - pv[i]) * (probe.times[i] - probe.times[i - 1]);
            break;
        }
    }
    if (t_cross < 0.0) throw LockNotFound("no zero crossing found in the settled latch");

    // Align each requested flip to the crossing grid (half-period spacing).
    const double lead_in = (an.flip_audit_cycles + an.relock_margin_cycles + 2.0) * period;
    TwoTankLatchConfig fcfg = tt;
    std::vector<FlipWindow> windows;
    for (double offset : cfg.flip_offsets) {
        const double want = t0 + lead_in + offset;
        const double k = std::round((want - t_cross) / (period / 2.0));
        const double start = t_cross + k * (period / 2.0);
        fcfg.sw.schedule.push_back({start, period / 2.0});
        windows.push_back({start, start + period / 2.0});
    }
    fcfg.sw.validate();

    auto fmodel = build_two_tank(fcfg);
    IntegratorConfig dense = dense_integrator(cfg, f_ref);
    dense.t_start = t0;
    dense.t_stop = windows.back().end +
                   (an.flip_audit_cycles + an.relock_margin_cycles + 22.0) * period;

    FlipRun run;
    run.trace = integrate(fmodel, dense, x);
    run.trace_origin = t0;

    auto segment_phase = [&](double a, double b) {
        double acc = 0.0;
        int n = 0;
        for (double ts = a; ts + period <= b + 1e-12 * period; ts += period) {
            const auto ps = extract_phase(run.trace, an.signal, f_ref, ts);
            acc += angle_difference_deg(ps.phase_deg, 0.0);
            ++n;
        }
        if (n == 0) throw TooShort("flip segment holds no full REF cycle");
        return wrap_degrees(acc / n);
    };

    FlipAuditOptions audit_opts;
    audit_opts.threshold_frac = an.energy_neutral_frac;
    audit_opts.window_cycles = an.flip_audit_cycles;
    audit_opts.post_settle_cycles = an.relock_margin_cycles;
    const auto verdicts = flip_energy_audit(run.trace, fmodel, f_ref, windows, audit_opts);

    for (std::size_t j = 0; j < windows.size(); ++j) {
        const auto& w = windows[j];
        FlipResult res;
        res.window = w;
        res.audit = verdicts[j];
        const double prev_end = j == 0 ? run.trace.times.front() : windows[j - 1].end;
        const double next_start =
            j + 1 < windows.size() ? windows[j + 1].start : run.trace.times.back();
        res.phase_before_deg =
            segment_phase(std::max(prev_end + period, w.start - 6 * period), w.start - 0.25 * period);
        res.phase_after_deg = segment_phase(w.end + an.relock_margin_cycles * period,
                                            std::min(next_start - 0.25 * period, w.end + 20 * period));
        res.phase_change_deg =
            std::abs(angle_difference_deg(res.phase_after_deg, res.phase_before_deg));
        // Re-lock: first cycle after the flip from which the phase stays
        // within the lock threshold of the settled post-flip phase.
        const double horizon = std::min(next_start, w.end + 21 * period);
        std::vector<double> phases;
        for (double ts = w.end; ts + period <= horizon; ts += period) {
            phases.push_back(
                angle_difference_deg(extract_phase(run.trace, an.signal, f_ref, ts).phase_deg,
                                     res.phase_after_deg));
        }
        for (std::size_t k = 0; k < phases.size(); ++k) {
            bool stays = true;
            for (std::size_t m = k; m < phases.size(); ++m) {
                if (std::abs(phases[m]) > an.lock_threshold_deg) {
                    stays = false;
                    break;
                }
            }
            if (stays) {
                res.relock_cycles = static_cast<double>(k);
                break;
            }
        }
        run.per_cycle_dissipation = verdicts[j].per_cycle_dissipation;
        run.flips.push_back(res);
    }
    return run;
}

nlohmann::json lock_report_json(const LockReport& rep) {
    nlohmann::json j;
    j["locked"] = rep.locked;
    j["lock_phase_deg"] = rep.lock_phase_deg;
    j["phase_drift_deg_per_cycle"] = rep.drift_deg_per_cycle;
    j["excursion_deg"] = rep.excursion_deg;
    j["amplitude"] = rep.amplitude;
    j["classified_bit"] = level_name(rep.classified_bit);
    if (rep.settle_time) j["settle_time_s"] = *rep.settle_time;
    else j["settle_time_s"] = nullptr;
    return j;
}

nlohmann::json energy_report_json(const EnergyReport& rep) {
    nlohmann::json j;
    j["peak_main_tank_energy_J"] = rep.peak_main_tank_energy;
    j["per_cycle_dissipation_J"] = rep.per_cycle_dissipation;
    j["per_cycle_loss_J"] = rep.per_cycle_loss;
    j["q_effective"] = rep.q_effective;
    j["q_standard"] = rep.q_standard;
    j["net_energy_zero_crossings_s"] = rep.net_energy_zero_crossings;
    return j;
}

namespace {

nlohmann::json flip_json(const FlipResult& f) {
    nlohmann::json j;
    j["window_start_s"] = f.window.start;
    j["window_end_s"] = f.window.end;
    j["phase_before_deg"] = f.phase_before_deg;
    j["phase_after_deg"] = f.phase_after_deg;
    j["phase_change_deg"] = f.phase_change_deg;
    j["relock_cycles"] = f.relock_cycles;
    j["excess_energy_J"] = f.audit.excess_energy;
    j["per_cycle_dissipation_J"] = f.audit.per_cycle_dissipation;
    j["energy_neutral"] = f.audit.energy_neutral;
    j["net_crossed_zero_after"] = f.audit.net_crossed_zero_after;
    return j;
}

GateNetwork::Assignment parse_assignment(const std::string& text) {
    GateNetwork::Assignment out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::string item = text.substr(start, end - start);
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw SyntaxError(0, 0, "inputs must be 'name=0' or 'name=1', got '" + item + "'");
        }
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string name = strip(item.substr(0, eq));
        const std::string val = strip(item.substr(eq + 1));
        if (val != "0" && val != "1") {
            throw SyntaxError(0, 0, "logic input '" + name + "' must be 0 or 1");
        }
        out[name] = val == "1" ? LogicLevel::one : LogicLevel::zero;
        start = end + 1;
    }
    return out;
}

nlohmann::json assignment_json(const GateNetwork::Assignment& a) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, level] : a) j[name] = logic_to_int(level);
    return j;
}

struct Outputs {
    const ExperimentConfig& cfg;
    fs::path dir;
    std::vector<ProducedFile> files;

    bool want_csv() const { return cfg.output.format != "json"; }
    bool want_json() const { return cfg.output.format != "csv"; }

    void add_csv(const std::string& name, const WaveformTrace& trace) {
        if (want_csv()) files.push_back(write_file(dir / name, csv_string(trace)));
    }
    void add_json(const std::string& name, const nlohmann::json& j) {
        if (want_json()) files.push_back(write_file(dir / name, j.dump(2) + "\n"));
    }
    void add_text(const std::string& name, const std::string& text) {
        files.push_back(write_file(dir / name, text));
    }
};

nlohmann::json run_transient_pipeline(const ExperimentConfig& cfg, Outputs& out,
                                      std::ostream& log) {
    const auto model = build_circuit(cfg);
    const double f_ref = circuit_f_ref(cfg);
    IntegratorConfig ic = dense_integrator(cfg, f_ref);
    ic.t_start = 0.0;
    ic.t_stop = cfg.transient_cycles / f_ref;
    const auto trace = integrate(model, ic, model.initial_state);
    out.add_csv("trace.csv", trace);

    nlohmann::json summary;
    summary["samples"] = trace.sample_count();
    summary["t_stop_s"] = ic.t_stop;
    try {
        const auto rep = detect_lock(trace, cfg.analysis.signal, f_ref,
                                     cfg.analysis.tail_fraction,
                                     {cfg.analysis.lock_threshold_deg});
        summary["tail_lock"] = lock_report_json(rep);
        log << "tail lock: locked=" << rep.locked << " phase=" << rep.lock_phase_deg
            << " deg bit=" << level_name(rep.classified_bit) << "\n";
    } catch (const Error& e) {
        summary["tail_lock"] = {{"error", e.kind()}};
    }
    log << "transient: " << trace.sample_count() << " samples over "
        << cfg.transient_cycles << " cycles\n";
    return summary;
}

nlohmann::json run_lockstates_pipeline(const ExperimentConfig& cfg, Outputs& out,
                                       std::ostream& log) {
    const auto pair = run_lockstates_experiment(cfg);
    out.add_csv("state_a.csv", pair.state_a.trace);
    out.add_csv("state_b.csv", pair.state_b.trace);
    nlohmann::json summary;
    summary["state_a"] = lock_report_json(pair.state_a.report);
    summary["state_b"] = lock_report_json(pair.state_b.report);
    summary["separation_deg"] = pair.separation_deg;
    summary["f_ref_hz"] = circuit_f_ref(cfg);
    out.add_json("lockstates.json", summary);
    log << "lock state A: phase " << pair.state_a.report.lock_phase_deg << " deg, bit "
        << level_name(pair.state_a.report.classified_bit) << "\n";
    log << "lock state B: phase " << pair.state_b.report.lock_phase_deg << " deg, bit "
        << level_name(pair.state_b.report.classified_bit) << "\n";
    log << "separation: " << pair.separation_deg << " deg\n";
    return summary;
}

nlohmann::json run_energy_pipeline(const ExperimentConfig& cfg, Outputs& out, std::ostream& log) {
    const auto pair = run_lockstates_experiment(cfg);
    const auto model = build_circuit(cfg);
    const auto rep = energy_report(pair.state_a.trace, model, circuit_f_ref(cfg));
    nlohmann::json summary = energy_report_json(rep);
    summary["lock"] = lock_report_json(pair.state_a.report);
    out.add_json("energy.json", summary);
    if (out.want_csv()) {
        WaveformTrace etr;
        etr.times = rep.times;
        for (std::size_t c = 0; c < rep.component_names.size(); ++c) {
            etr.names.push_back(rep.component_names[c] + ".energy");
            etr.columns.push_back(rep.cumulative_energy[c]);
        }
        etr.names.push_back("stored_energy");
        etr.columns.push_back(rep.stored_energy);
        etr.names.push_back("net_energy");
        etr.columns.push_back(rep.net_energy);
        out.add_csv("energy.csv", etr);
    }
    log << "peak main tank energy: " << rep.peak_main_tank_energy * 1e6 << " uJ\n";
    log << "per-cycle dissipation: " << rep.per_cycle_dissipation * 1e9 << " nJ\n";
    log << "effective Q: " << rep.q_effective << " (2*pi convention: " << rep.q_standard << ")\n";
    return summary;
}

nlohmann::json run_flip_pipeline(const ExperimentConfig& cfg, Outputs& out, std::ostream& log) {
    const auto run = run_flip_experiment(cfg);
    out.add_csv("flip_trace.csv", run.trace);
    nlohmann::json summary;
    summary["flips"] = nlohmann::json::array();
    bool all_neutral = true;
    for (const auto& f : run.flips) {
        summary["flips"].push_back(flip_json(f));
        all_neutral = all_neutral && f.audit.energy_neutral;
        log << "flip @ " << f.window.start * 1e6 << " us: phase change " << f.phase_change_deg
            << " deg, re-lock " << f.relock_cycles << " cycles, excess "
            << f.audit.excess_energy * 1e12 << " pJ ("
            << (f.audit.energy_neutral ? "ENERGY_NEUTRAL" : "NOT NEUTRAL") << ", net zero-cross "
            << (f.audit.net_crossed_zero_after ? "yes" : "no") << ")\n";
    }
    summary["all_energy_neutral"] = all_neutral;
    out.add_json("flip.json", summary);
    return summary;
}

nlohmann::json run_ber_pipeline(const ExperimentConfig& cfg, Outputs& out, std::ostream& log) {
    const auto rows = ber_sweep(cfg.ber.encodings, cfg.ber.ratios, cfg.ber.trials, cfg.ber.seed,
                                cfg.ber.signal);
    std::ostringstream csv;
    csv << "encoding,n_over_s,analytic,empirical,errors,trials,half_width_95\n";
    char buf[32];
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", row.n_over_s);
        csv << to_string(row.encoding) << ',' << buf;
        std::snprintf(buf, sizeof buf, "%.17g", row.result.analytic);
        csv << ',' << buf;
        std::snprintf(buf, sizeof buf, "%.17g", row.result.empirical);
        csv << ',' << buf << ',' << row.result.errors << ',' << row.result.trials;
        std::snprintf(buf, sizeof buf, "%.17g", row.result.half_width_95);
        csv << ',' << buf << '\n';
        jrows.push_back({{"encoding", to_string(row.encoding)},
                         {"n_over_s", row.n_over_s},
                         {"analytic", row.result.analytic},
                         {"empirical", row.result.empirical},
                         {"errors", row.result.errors},
                         {"trials", row.result.trials},
                         {"half_width_95", row.result.half_width_95}});
        log << to_string(row.encoding) << " n/s=" << row.n_over_s
            << ": analytic=" << row.result.analytic << " empirical=" << row.result.empirical
            << "\n";
    }
    if (out.want_csv()) out.add_text("ber.csv", csv.str());
    nlohmann::json summary;
    summary["rows"] = jrows;
    summary["seed"] = cfg.ber.seed;
    summary["trials"] = cfg.ber.trials;
    out.add_json("ber.json", summary);
    return summary;
}

nlohmann::json run_logic_pipeline(const ExperimentConfig& cfg, Outputs& out, std::ostream& log) {
    nlohmann::json summary;
    if (cfg.logic.demo == "serial-adder") {
        FullAdderFSM fsm;
        const std::uint64_t a = cfg.logic.a_value, b = cfg.logic.b_value;
        const int bits = cfg.logic.n_bits;
        std::uint64_t sum = 0;
        nlohmann::json steps = nlohmann::json::array();
        for (int k = 0; k <= bits; ++k) {
            const LogicLevel ak = logic_from_int(static_cast<int>((a >> k) & 1));
            const LogicLevel bk = logic_from_int(static_cast<int>((b >> k) & 1));
            const auto r = fsm.step(ak, bk);
            sum |= static_cast<std::uint64_t>(logic_to_int(r.sum)) << k;
            steps.push_back({{"cycle", k},
                             {"a", logic_to_int(ak)},
                             {"b", logic_to_int(bk)},
                             {"sum", logic_to_int(r.sum)},
                             {"carry", logic_to_int(r.new_state)}});
        }
        summary["demo"] = "serial-adder";
        summary["a"] = a;
        summary["b"] = b;
        summary["sum"] = sum;
        summary["expected"] = a + b;
        summary["matches"] = sum == a + b;
        summary["steps"] = steps;
        log << "serial adder: " << a << " + " << b << " = " << sum
            << (sum == a + b ? " (matches)" : " (MISMATCH)") << "\n";
    } else if (!cfg.logic.demo.empty()) {
        throw ConfigInvalid("unknown logic demo '" + cfg.logic.demo + "'");
    } else {
        std::ifstream in(cfg.logic.netlist_path);
        if (!in) throw Error("io_error", "cannot read netlist '" + cfg.logic.netlist_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        const auto net = parse_netlist(ss.str());
        summary["netlist"] = cfg.logic.netlist_path;
        summary["inputs_declared"] = net.inputs();
        summary["outputs_declared"] = net.outputs();
        auto eval_one = [&](const GateNetwork::Assignment& in_assign) {
            if (net.latches().empty()) {
                return net.evaluate(in_assign);
            }
            GateNetwork::Assignment state;
            return net.step(in_assign, state);
        };
        if (!cfg.logic.vectors_path.empty()) {
            std::ifstream vin(cfg.logic.vectors_path);
            if (!vin) {
                throw Error("io_error", "cannot read vectors '" + cfg.logic.vectors_path + "'");
            }
            nlohmann::json vj = nlohmann::json::parse(vin);
            if (!vj.is_array()) throw SyntaxError(0, 0, "vectors file must be a JSON array");
            GateNetwork::Assignment state;
            nlohmann::json results = nlohmann::json::array();
            for (const auto& item : vj) {
                GateNetwork::Assignment assign;
                for (const auto& [k, v] : item.items()) {
                    assign[k] = logic_from_int(v.get<int>());
                }
                const auto result = net.latches().empty() ? net.evaluate(assign)
                                                          : net.step(assign, state);
                results.push_back(assignment_json(result));
            }
            summary["results"] = results;
            log << "evaluated " << results.size() << " vectors\n";
        } else {
            const auto assign = parse_assignment(cfg.logic.inputs);
            const auto result = eval_one(assign);
            summary["result"] = assignment_json(result);
            log << "evaluated 1 assignment, " << result.size() << " nodes\n";
        }
    }
    out.add_json("logic.json", summary);
    return summary;
}

} // namespace

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = "shilsim";
    j["version"] = tool_version;
    j["kind"] = kind;
    if (!preset.empty()) j["preset"] = preset;
    j["wall_seconds"] = wall_seconds;
    j["summary"] = summary;
    j["config"] = config_echo;
    j["files"] = nlohmann::json::array();
    for (const auto& f : files) {
        j["files"].push_back({{"path", f.path}, {"bytes", f.bytes}, {"fnv64", f.fnv64}});
    }
    return j;
}

RunManifest run_experiment(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    Outputs out{config, fs::path(config.output.dir), {}};
    fs::create_directories(out.dir);

    RunManifest manifest;
    manifest.kind = to_string(config.kind);
    manifest.preset = config.preset;
    manifest.config_echo = render_config(config);

    switch (config.kind) {
        case ExperimentKind::transient:
            manifest.summary = run_transient_pipeline(config, out, log);
            break;
        case ExperimentKind::lockstates:
            manifest.summary = run_lockstates_pipeline(config, out, log);
            break;
        case ExperimentKind::energy:
            manifest.summary = run_energy_pipeline(config, out, log);
            break;
        case ExperimentKind::flip:
            manifest.summary = run_flip_pipeline(config, out, log);
            break;
        case ExperimentKind::ber:
            manifest.summary = run_ber_pipeline(config, out, log);
            break;
        case ExperimentKind::logic:
            manifest.summary = run_logic_pipeline(config, out, log);
            break;
    }

    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest.files = out.files;
    const auto mf = write_file(out.dir / "manifest.json", manifest.to_json().dump(2) + "\n");
    log << "wrote " << manifest.files.size() + 1 << " files to " << out.dir.string() << " ("
        << manifest.wall_seconds << " s)\n";
    manifest.files.push_back(mf);
    return manifest;
}

} // namespace shilsim
