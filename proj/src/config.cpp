#include "shilsim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "shilsim/presets.hpp"

namespace shilsim {

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::transient: return "transient";
        case ExperimentKind::lockstates: return "lockstates";
        case ExperimentKind::flip: return "flip";
        case ExperimentKind::energy: return "energy";
        case ExperimentKind::ber: return "ber";
        case ExperimentKind::logic: return "logic";
    }
    return "?";
}

ExperimentKind experiment_kind_from(const std::string& name) {
    for (auto k : {ExperimentKind::transient, ExperimentKind::lockstates, ExperimentKind::flip,
                   ExperimentKind::energy, ExperimentKind::ber, ExperimentKind::logic}) {
        if (name == to_string(k)) return k;
    }
    throw ConfigInvalid("unknown experiment kind '" + name + "'");
}

namespace {

enum class Dim { none, volt, ampere, ohm, farad, henry, hertz, second, degree, per_volt };

const char* dim_name(Dim d) {
    switch (d) {
        case Dim::none: return "dimensionless";
        case Dim::volt: return "voltage (V)";
        case Dim::ampere: return "current (A)";
        case Dim::ohm: return "resistance (Ohm)";
        case Dim::farad: return "capacitance (F)";
        case Dim::henry: return "inductance (H)";
        case Dim::hertz: return "frequency (Hz)";
        case Dim::second: return "time (s)";
        case Dim::degree: return "angle (deg)";
        case Dim::per_volt: return "1/V";
    }
    return "?";
}

struct UnitInfo {
    Dim dim;
    double scale;
};

const std::map<std::string, UnitInfo>& unit_table() {
    static const std::map<std::string, UnitInfo> table = [] {
        std::map<std::string, UnitInfo> t;
        struct Root {
            const char* name;
            Dim dim;
        };
        const Root roots[] = {{"V", Dim::volt},   {"A", Dim::ampere}, {"Ohm", Dim::ohm},
                              {"ohm", Dim::ohm},  {"F", Dim::farad},  {"H", Dim::henry},
                              {"Hz", Dim::hertz}, {"s", Dim::second}};
        const std::pair<const char*, double> prefixes[] = {
            {"", 1.0},    {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6},
            {"m", 1e-3},  {"k", 1e3},   {"M", 1e6},  {"G", 1e9}};
        for (const auto& r : roots) {
            for (const auto& [p, scale] : prefixes) {
                t[std::string(p) + r.name] = {r.dim, scale};
            }
        }
        t["deg"] = {Dim::degree, 1.0};
        t["1/V"] = {Dim::per_volt, 1.0};
        return t;
    }();
    return table;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool g_require_units = true;

double parse_quantity(std::string_view value, Dim want, int line, int col) {
    value = trim(value);
    if (value.empty()) throw SyntaxError(line, col, "empty value");
    const std::string text(value);
    char* end = nullptr;
    const double num = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || !std::isfinite(num)) {
        throw SyntaxError(line, col, "expected a number, got '" + text + "'");
    }
    std::string_view unit = trim(std::string_view(end));
    if (unit.empty()) {
        if (want == Dim::none || !g_require_units) return num;
        throw UnitMismatch(line, col, "value '" + text + "' needs a " +
                                          std::string(dim_name(want)) + " unit");
    }
    const auto it = unit_table().find(std::string(unit));
    if (it == unit_table().end()) {
        throw UnitMismatch(line, col, "unknown unit '" + std::string(unit) + "'");
    }
    if (it->second.dim != want) {
        throw UnitMismatch(line, col, "unit '" + std::string(unit) + "' is not " +
                                          std::string(dim_name(want)));
    }
    return num * it->second.scale;
}

std::uint64_t parse_count(std::string_view value, int line, int col) {
    const double v = parse_quantity(value, Dim::none, line, col);
    if (v < 0 || v != std::floor(v) || v > 1.8e19) {
        throw SyntaxError(line, col, "expected a nonnegative integer");
    }
    return static_cast<std::uint64_t>(v);
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= value.size(); ++i) {
        if (i == value.size() || value[i] == ',') {
            out.push_back(trim(value.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

struct Line {
    int number;
    std::string section;
    std::string key;
    std::string value;
    int value_col;
};

class ConfigBuilder {
public:
    ExperimentConfig cfg;
    bool kind_set = false;

    void open_section(const std::string& sec, int line) {
        if (sec == "two_tank") {
            if (!cfg.two_tank) cfg.two_tank.emplace();
        } else if (sec == "ring") {
            if (!cfg.ring) cfg.ring.emplace();
        } else if (sec != "integrator" && sec != "analysis" && sec != "flip" && sec != "ber" &&
                   sec != "logic" && sec != "transient" && sec != "output") {
            throw UnknownKey(line, 1, "unknown section [" + sec + "]");
        }
    }

    void apply(const Line& ln) {
        if (ln.section.empty()) return apply_top(ln);
        if (ln.section == "two_tank") return apply_two_tank(ln);
        if (ln.section == "ring") return apply_ring(ln);
        if (ln.section == "integrator") return apply_integrator(ln);
        if (ln.section == "analysis") return apply_analysis(ln);
        if (ln.section == "flip") return apply_flip(ln);
        if (ln.section == "ber") return apply_ber(ln);
        if (ln.section == "logic") return apply_logic(ln);
        if (ln.section == "transient") return apply_transient(ln);
        if (ln.section == "output") return apply_output(ln);
        throw UnknownKey(ln.number, 1, "unknown section [" + ln.section + "]");
    }

private:
    [[noreturn]] void unknown(const Line& ln) const {
        std::string where = ln.section.empty() ? "top level" : "[" + ln.section + "]";
        throw UnknownKey(ln.number, 1, "unknown key '" + ln.key + "' in " + where);
    }

    double qty(const Line& ln, Dim d) const {
        return parse_quantity(ln.value, d, ln.number, ln.value_col);
    }

    void apply_top(const Line& ln) {
        if (ln.key == "kind") {
            cfg.kind = experiment_kind_from(ln.value);
            kind_set = true;
        } else if (ln.key == "preset") {
            cfg.preset = ln.value;  // base already applied by parse_config
        } else {
            unknown(ln);
        }
    }

    void apply_two_tank(const Line& ln) {
        auto& tt = *cfg.two_tank;
        if (ln.key == "L1") tt.L1 = qty(ln, Dim::henry);
        else if (ln.key == "C1") tt.C1 = qty(ln, Dim::farad);
        else if (ln.key == "R1") tt.R1 = qty(ln, Dim::ohm);
        else if (ln.key == "L2") tt.L2 = qty(ln, Dim::henry);
        else if (ln.key == "C2") tt.C2 = qty(ln, Dim::farad);
        else if (ln.key == "R2") tt.R2 = qty(ln, Dim::ohm);
        else if (ln.key == "k1") tt.nonlinear.k1 = qty(ln, Dim::ampere);
        else if (ln.key == "k2") tt.nonlinear.k2 = qty(ln, Dim::per_volt);
        else if (ln.key == "k3") tt.nonlinear.k3 = qty(ln, Dim::none);
        else if (ln.key == "knee") tt.nonlinear.knee = qty(ln, Dim::volt);
        else if (ln.key == "polarity") {
            if (ln.value == "supplying") tt.nonlinear.polarity = NonlinearPolarity::supplying;
            else if (ln.value == "as_written") tt.nonlinear.polarity = NonlinearPolarity::as_written;
            else throw SyntaxError(ln.number, ln.value_col, "polarity is supplying|as_written");
        }
        else if (ln.key == "sync_amplitude") tt.sync.amplitude = qty(ln, Dim::volt);
        else if (ln.key == "f_sync") tt.sync.f_sync = qty(ln, Dim::hertz);
        else if (ln.key == "sync_phase") tt.sync.phase_offset_deg = qty(ln, Dim::degree);
        else if (ln.key == "f_ref") tt.f_ref = qty(ln, Dim::hertz);
        else if (ln.key == "r_on") tt.sw.r_on = qty(ln, Dim::ohm);
        else if (ln.key == "r_off") tt.sw.r_off = qty(ln, Dim::ohm);
        else if (ln.key == "actuate") {
            auto parts = split_list(ln.value);
            if (parts.size() != 2) {
                throw SyntaxError(ln.number, ln.value_col, "actuate takes 'start, duration'");
            }
            ActuationWindow w;
            w.start = parse_quantity(parts[0], Dim::second, ln.number, ln.value_col);
            w.duration = parse_quantity(parts[1], Dim::second, ln.number, ln.value_col);
            tt.sw.schedule.push_back(w);
        }
        else unknown(ln);
    }

    void apply_ring(const Line& ln) {
        auto& r = *cfg.ring;
        if (ln.key == "stages") r.n_stages = static_cast<int>(parse_count(ln.value, ln.number, ln.value_col));
        else if (ln.key == "gain") r.stage_gain = qty(ln, Dim::none);
        else if (ln.key == "tau") r.stage_tau = qty(ln, Dim::second);
        else if (ln.key == "asymmetry") r.stage_asymmetry = qty(ln, Dim::none);
        else if (ln.key == "sync_amplitude") r.sync_amplitude = qty(ln, Dim::none);
        else if (ln.key == "f_sync") r.f_sync = qty(ln, Dim::hertz);
        else if (ln.key == "sync_phase") r.sync_phase_deg = qty(ln, Dim::degree);
        else if (ln.key == "sync_start") r.sync_start = qty(ln, Dim::second);
        else if (ln.key == "f_ref") r.f_ref = qty(ln, Dim::hertz);
        else if (ln.key == "inject") {
            auto parts = split_list(ln.value);
            if (parts.size() != 4) {
                throw SyntaxError(ln.number, ln.value_col,
                                  "inject takes 'level, start, duration, amplitude'");
            }
            RingInjection inj;
            if (parts[0] == "0") inj.level = LogicLevel::zero;
            else if (parts[0] == "1") inj.level = LogicLevel::one;
            else throw SyntaxError(ln.number, ln.value_col, "injection level is 0 or 1");
            inj.start = parse_quantity(parts[1], Dim::second, ln.number, ln.value_col);
            inj.duration = parse_quantity(parts[2], Dim::second, ln.number, ln.value_col);
            inj.amplitude = parse_quantity(parts[3], Dim::none, ln.number, ln.value_col);
            r.logic_schedule.push_back(inj);
        }
        else unknown(ln);
    }

    void apply_integrator(const Line& ln) {
        auto& ic = cfg.integrator;
        if (ln.key == "method") {
            if (ln.value == "rk4") ic.method = IntegratorMethod::rk4_fixed;
            else if (ln.value == "trap") ic.method = IntegratorMethod::trap_implicit;
            else throw SyntaxError(ln.number, ln.value_col, "method is rk4|trap");
        }
        else if (ln.key == "step") ic.step = qty(ln, Dim::second);
        else if (ln.key == "rel_tol") ic.rel_tol = qty(ln, Dim::none);
        else if (ln.key == "abs_tol") ic.abs_tol = qty(ln, Dim::none);
        else if (ln.key == "max_step") ic.max_step = qty(ln, Dim::second);
        else if (ln.key == "capture_stride") ic.capture_stride = static_cast<int>(parse_count(ln.value, ln.number, ln.value_col));
        else unknown(ln);
    }

    void apply_analysis(const Line& ln) {
        auto& an = cfg.analysis;
        if (ln.key == "lock_threshold") an.lock_threshold_deg = qty(ln, Dim::degree);
        else if (ln.key == "tail_fraction") an.tail_fraction = qty(ln, Dim::none);
        else if (ln.key == "settle_cycles") an.settle_cycles = qty(ln, Dim::none);
        else if (ln.key == "analysis_cycles") an.analysis_cycles = qty(ln, Dim::none);
        else if (ln.key == "samples_per_cycle") an.samples_per_cycle = static_cast<int>(parse_count(ln.value, ln.number, ln.value_col));
        else if (ln.key == "warm_start_phase") an.warm_start_phase_deg = qty(ln, Dim::degree);
        else if (ln.key == "warm_start_amplitude") an.warm_start_amplitude = qty(ln, Dim::volt);
        else if (ln.key == "energy_neutral_frac") an.energy_neutral_frac = qty(ln, Dim::none);
        else if (ln.key == "flip_audit_cycles") an.flip_audit_cycles = qty(ln, Dim::none);
        else if (ln.key == "relock_margin_cycles") an.relock_margin_cycles = qty(ln, Dim::none);
        else if (ln.key == "separation_tol") an.separation_tol_deg = qty(ln, Dim::degree);
        else if (ln.key == "signal") an.signal = ln.value;
        else unknown(ln);
    }

    void apply_flip(const Line& ln) {
        if (ln.key == "offsets") {
            cfg.flip_offsets.clear();
            for (auto part : split_list(ln.value)) {
                cfg.flip_offsets.push_back(
                    parse_quantity(part, Dim::second, ln.number, ln.value_col));
            }
        } else {
            unknown(ln);
        }
    }

    void apply_ber(const Line& ln) {
        auto& b = cfg.ber;
        if (ln.key == "ratios") {
            b.ratios.clear();
            for (auto part : split_list(ln.value)) {
                b.ratios.push_back(parse_quantity(part, Dim::none, ln.number, ln.value_col));
            }
        }
        else if (ln.key == "trials") b.trials = parse_count(ln.value, ln.number, ln.value_col);
        else if (ln.key == "seed") b.seed = parse_count(ln.value, ln.number, ln.value_col);
        else if (ln.key == "encodings") {
            b.encodings.clear();
            for (auto part : split_list(ln.value)) {
                if (part == "level") b.encodings.push_back(Encoding::level);
                else if (part == "phase") b.encodings.push_back(Encoding::phase);
                else throw SyntaxError(ln.number, ln.value_col, "encodings are level|phase");
            }
        }
        else if (ln.key == "signal_amplitude") b.signal = qty(ln, Dim::none);
        else unknown(ln);
    }

    void apply_logic(const Line& ln) {
        auto& lg = cfg.logic;
        if (ln.key == "netlist") lg.netlist_path = ln.value;
        else if (ln.key == "inputs") lg.inputs = ln.value;
        else if (ln.key == "vectors") lg.vectors_path = ln.value;
        else if (ln.key == "demo") lg.demo = ln.value;
        else if (ln.key == "a") lg.a_value = parse_count(ln.value, ln.number, ln.value_col);
        else if (ln.key == "b") lg.b_value = parse_count(ln.value, ln.number, ln.value_col);
        else if (ln.key == "bits") lg.n_bits = static_cast<int>(parse_count(ln.value, ln.number, ln.value_col));
        else unknown(ln);
    }

    void apply_transient(const Line& ln) {
        if (ln.key == "cycles") cfg.transient_cycles = qty(ln, Dim::none);
        else unknown(ln);
    }

    void apply_output(const Line& ln) {
        if (ln.key == "dir") cfg.output.dir = ln.value;
        else if (ln.key == "format") {
            if (ln.value != "csv" && ln.value != "json" && ln.value != "both") {
                throw SyntaxError(ln.number, ln.value_col, "format is csv|json|both");
            }
            cfg.output.format = ln.value;
        }
        else unknown(ln);
    }
};

ExperimentConfig parse_config_json(std::string_view text);

} // namespace

void ExperimentConfig::validate() const {
    const bool needs_circuit = kind == ExperimentKind::transient ||
                               kind == ExperimentKind::lockstates ||
                               kind == ExperimentKind::flip || kind == ExperimentKind::energy;
    if (needs_circuit && !two_tank && !ring) {
        throw MissingRequired(0, 0, std::string(to_string(kind)) +
                                        " experiments need a [two_tank] or [ring] circuit");
    }
    if (two_tank && ring) {
        throw ConfigInvalid("configure either [two_tank] or [ring], not both");
    }
    if (two_tank) two_tank->validate();
    if (ring) ring->validate();
    if (kind == ExperimentKind::flip) {
        if (!two_tank) throw MissingRequired(0, 0, "flip experiments need a [two_tank] circuit");
        if (flip_offsets.empty()) throw MissingRequired(0, 0, "flip experiments need [flip] offsets");
    }
    if (kind == ExperimentKind::ber) {
        if (ber.ratios.empty()) throw MissingRequired(0, 0, "ber experiments need ratios");
        for (double r : ber.ratios) {
            if (r < 0) throw ConfigInvalid("ber ratios must be >= 0");
        }
        if (ber.trials < 1) throw ConfigInvalid("ber trials must be >= 1");
        if (!(ber.signal > 0)) throw ConfigInvalid("ber signal_amplitude must be > 0");
        if (ber.encodings.empty()) throw MissingRequired(0, 0, "ber experiments need encodings");
    }
    if (kind == ExperimentKind::logic) {
        if (logic.netlist_path.empty() && logic.demo.empty()) {
            throw MissingRequired(0, 0, "logic experiments need a netlist or a demo");
        }
        if (logic.n_bits < 1 || logic.n_bits > 62) throw ConfigInvalid("logic bits must be in 1..62");
    }
    if (!(transient_cycles > 0)) throw ConfigInvalid("transient cycles must be > 0");
    if (!(analysis.tail_fraction > 0.0 && analysis.tail_fraction <= 1.0)) {
        throw ConfigInvalid("analysis tail_fraction must be in (0, 1]");
    }
    if (!(analysis.lock_threshold_deg > 0)) throw ConfigInvalid("lock_threshold must be > 0");
    if (analysis.samples_per_cycle < 32) throw ConfigInvalid("samples_per_cycle must be >= 32");
    if (integrator.step < 0 || integrator.rel_tol <= 0 || integrator.abs_tol <= 0) {
        throw ConfigInvalid("integrator step/tolerances invalid");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    const auto head = trim(text);
    if (!head.empty() && head.front() == '{') return parse_config_json(text);

    std::vector<Line> lines;
    int line_no = 0;
    std::string current_section;
    std::size_t at = 0;
    while (at <= text.size()) {
        const std::size_t eol = text.find('\n', at);
        std::string_view raw =
            text.substr(at, eol == std::string_view::npos ? std::string_view::npos : eol - at);
        at = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        const auto body = trim(raw);
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') throw SyntaxError(line_no, 1, "unterminated section header");
            current_section = std::string(trim(body.substr(1, body.size() - 2)));
            lines.push_back({line_no, "\x01", current_section, "", 1});
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw SyntaxError(line_no, 1, "expected 'key = value' or '[section]'");
        }
        const auto key = trim(body.substr(0, eq));
        if (key.empty()) throw SyntaxError(line_no, 1, "missing key before '='");
        const int value_col = static_cast<int>(eq + 2);
        lines.push_back({line_no, current_section, std::string(key),
                         std::string(trim(body.substr(eq + 1))), value_col});
    }

    ConfigBuilder builder;
    // A preset line (before any other setting) provides the base config.
    bool seen_other = false;
    for (const auto& ln : lines) {
        if (ln.section.empty() && ln.key == "preset") {
            if (seen_other) {
                throw SyntaxError(ln.number, 1, "preset must come before other settings");
            }
            builder.cfg = preset_config(ln.value);
            builder.kind_set = true;
        } else if (ln.section != "\x01") {
            seen_other = true;
        }
    }
    for (const auto& ln : lines) {
        if (ln.section == "\x01") {
            builder.open_section(ln.key, ln.number);
            continue;
        }
        if (ln.section.empty() && ln.key == "preset") continue;
        builder.apply(ln);
    }
    if (!builder.kind_set) {
        throw MissingRequired(0, 0, "config must set 'kind' (or name a preset)");
    }
    builder.cfg.validate();
    return builder.cfg;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ExperimentConfig parse_config_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(0, 0, std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw SyntaxError(0, 0, "JSON config must be an object");
    // Render into the line format (numbers are SI; strings may carry
    // units) and reuse the strict text parser and its diagnostics.
    std::ostringstream out;
    auto emit_scalar = [&](const std::string& key, const nlohmann::json& v) {
        if (v.is_string()) out << key << " = " << v.get<std::string>() << "\n";
        else if (v.is_number()) out << key << " = " << fmt(v.get<double>()) << "\n";
        else if (v.is_array()) {
            out << key << " = ";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out << ", ";
                if (v[i].is_string()) out << v[i].get<std::string>();
                else out << fmt(v[i].get<double>());
            }
            out << "\n";
        } else {
            throw SyntaxError(0, 0, "unsupported JSON value for key '" + key + "'");
        }
    };
    for (const auto& [key, value] : j.items()) {
        if (!value.is_object()) emit_scalar(key, value);
    }
    for (const auto& [sec, value] : j.items()) {
        if (!value.is_object()) continue;
        out << "[" << sec << "]\n";
        for (const auto& [key, v] : value.items()) {
            if ((sec == "two_tank" && key == "actuate") || (sec == "ring" && key == "inject")) {
                if (!v.is_array()) throw SyntaxError(0, 0, key + " must be an array of entries");
                for (const auto& entry : v) emit_scalar(key, entry);
            } else {
                emit_scalar(key, v);
            }
        }
    }
    // Bare JSON numbers are SI values; only strings carry units.
    g_require_units = false;
    try {
        auto cfg = parse_config(out.str());
        g_require_units = true;
        return cfg;
    } catch (...) {
        g_require_units = true;
        throw;
    }
}

} // namespace

std::string render_config(const ExperimentConfig& c) {
    std::ostringstream o;
    o << "kind = " << to_string(c.kind) << "\n";
    if (c.two_tank) {
        const auto& t = *c.two_tank;
        o << "\n[two_tank]\n";
        o << "L1 = " << fmt(t.L1) << " H\n";
        o << "C1 = " << fmt(t.C1) << " F\n";
        o << "R1 = " << fmt(t.R1) << " Ohm\n";
        o << "L2 = " << fmt(t.L2) << " H\n";
        o << "C2 = " << fmt(t.C2) << " F\n";
        o << "R2 = " << fmt(t.R2) << " Ohm\n";
        o << "k1 = " << fmt(t.nonlinear.k1) << " A\n";
        o << "k2 = " << fmt(t.nonlinear.k2) << " 1/V\n";
        o << "k3 = " << fmt(t.nonlinear.k3) << "\n";
        o << "knee = " << fmt(t.nonlinear.knee) << " V\n";
        o << "polarity = "
          << (t.nonlinear.polarity == NonlinearPolarity::supplying ? "supplying" : "as_written")
          << "\n";
        o << "sync_amplitude = " << fmt(t.sync.amplitude) << " V\n";
        o << "f_sync = " << fmt(t.sync.f_sync) << " Hz\n";
        o << "sync_phase = " << fmt(t.sync.phase_offset_deg) << " deg\n";
        o << "f_ref = " << fmt(t.f_ref) << " Hz\n";
        o << "r_on = " << fmt(t.sw.r_on) << " Ohm\n";
        o << "r_off = " << fmt(t.sw.r_off) << " Ohm\n";
        for (const auto& w : t.sw.schedule) {
            o << "actuate = " << fmt(w.start) << " s, " << fmt(w.duration) << " s\n";
        }
    }
    if (c.ring) {
        const auto& r = *c.ring;
        o << "\n[ring]\n";
        o << "stages = " << r.n_stages << "\n";
        o << "gain = " << fmt(r.stage_gain) << "\n";
        o << "tau = " << fmt(r.stage_tau) << " s\n";
        o << "asymmetry = " << fmt(r.stage_asymmetry) << "\n";
        o << "sync_amplitude = " << fmt(r.sync_amplitude) << "\n";
        o << "f_sync = " << fmt(r.f_sync) << " Hz\n";
        o << "sync_phase = " << fmt(r.sync_phase_deg) << " deg\n";
        o << "sync_start = " << fmt(r.sync_start) << " s\n";
        o << "f_ref = " << fmt(r.f_ref) << " Hz\n";
        for (const auto& inj : r.logic_schedule) {
            o << "inject = " << to_string(inj.level) << ", " << fmt(inj.start) << " s, "
              << fmt(inj.duration) << " s, " << fmt(inj.amplitude) << "\n";
        }
    }
    o << "\n[integrator]\n";
    o << "method = "
      << (c.integrator.method == IntegratorMethod::rk4_fixed ? "rk4" : "trap") << "\n";
    o << "step = " << fmt(c.integrator.step) << " s\n";
    o << "rel_tol = " << fmt(c.integrator.rel_tol) << "\n";
    o << "abs_tol = " << fmt(c.integrator.abs_tol) << "\n";
    o << "max_step = " << fmt(c.integrator.max_step) << " s\n";
    o << "capture_stride = " << c.integrator.capture_stride << "\n";
    o << "\n[analysis]\n";
    o << "lock_threshold = " << fmt(c.analysis.lock_threshold_deg) << " deg\n";
    o << "tail_fraction = " << fmt(c.analysis.tail_fraction) << "\n";
    o << "settle_cycles = " << fmt(c.analysis.settle_cycles) << "\n";
    o << "analysis_cycles = " << fmt(c.analysis.analysis_cycles) << "\n";
    o << "samples_per_cycle = " << c.analysis.samples_per_cycle << "\n";
    o << "warm_start_phase = " << fmt(c.analysis.warm_start_phase_deg) << " deg\n";
    o << "warm_start_amplitude = " << fmt(c.analysis.warm_start_amplitude) << " V\n";
    o << "energy_neutral_frac = " << fmt(c.analysis.energy_neutral_frac) << "\n";
    o << "flip_audit_cycles = " << fmt(c.analysis.flip_audit_cycles) << "\n";
    o << "relock_margin_cycles = " << fmt(c.analysis.relock_margin_cycles) << "\n";
    o << "separation_tol = " << fmt(c.analysis.separation_tol_deg) << " deg\n";
    o << "signal = " << c.analysis.signal << "\n";
    if (!c.flip_offsets.empty()) {
        o << "\n[flip]\noffsets = ";
        for (std::size_t i = 0; i < c.flip_offsets.size(); ++i) {
            if (i) o << ", ";
            o << fmt(c.flip_offsets[i]) << " s";
        }
        o << "\n";
    }
    if (c.kind == ExperimentKind::ber) {
        o << "\n[ber]\nratios = ";
        for (std::size_t i = 0; i < c.ber.ratios.size(); ++i) {
            if (i) o << ", ";
            o << fmt(c.ber.ratios[i]);
        }
        o << "\ntrials = " << c.ber.trials << "\n";
        o << "seed = " << c.ber.seed << "\n";
        o << "encodings = ";
        for (std::size_t i = 0; i < c.ber.encodings.size(); ++i) {
            if (i) o << ", ";
            o << to_string(c.ber.encodings[i]);
        }
        o << "\nsignal_amplitude = " << fmt(c.ber.signal) << "\n";
    }
    if (c.kind == ExperimentKind::logic) {
        o << "\n[logic]\n";
        if (!c.logic.netlist_path.empty()) o << "netlist = " << c.logic.netlist_path << "\n";
        if (!c.logic.inputs.empty()) o << "inputs = " << c.logic.inputs << "\n";
        if (!c.logic.vectors_path.empty()) o << "vectors = " << c.logic.vectors_path << "\n";
        if (!c.logic.demo.empty()) o << "demo = " << c.logic.demo << "\n";
        o << "a = " << c.logic.a_value << "\n";
        o << "b = " << c.logic.b_value << "\n";
        o << "bits = " << c.logic.n_bits << "\n";
    }
    if (c.kind == ExperimentKind::transient) {
        o << "\n[transient]\ncycles = " << fmt(c.transient_cycles) << "\n";
    }
    o << "\n[output]\n";
    o << "dir = " << c.output.dir << "\n";
    o << "format = " << c.output.format << "\n";
    return o.str();
}

} // namespace shilsim
