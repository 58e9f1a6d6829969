// Python bindings for the core operations.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "shilsim/ber.hpp"
#include "shilsim/circuit.hpp"
#include "shilsim/config.hpp"
#include "shilsim/device.hpp"
#include "shilsim/energy.hpp"
#include "shilsim/lock.hpp"
#include "shilsim/logic.hpp"
#include "shilsim/netlist.hpp"
#include "shilsim/phasor.hpp"
#include "shilsim/pipelines.hpp"
#include "shilsim/presets.hpp"
#include "shilsim/transient.hpp"

namespace py = pybind11;
using namespace shilsim;

namespace {

py::dict trace_to_dict(const WaveformTrace& tr) {
    py::dict d;
    d["times"] = tr.times;
    py::dict cols;
    for (std::size_t i = 0; i < tr.names.size(); ++i) {
        cols[py::str(tr.names[i])] = tr.columns[i];
    }
    d["signals"] = cols;
    py::list marks;
    for (const auto& [t, label] : tr.event_marks) marks.append(py::make_tuple(t, label));
    d["event_marks"] = marks;
    return d;
}

std::map<std::string, int> assignment_to_ints(const GateNetwork::Assignment& a) {
    std::map<std::string, int> out;
    for (const auto& [k, v] : a) out[k] = logic_to_int(v);
    return out;
}

GateNetwork::Assignment ints_to_assignment(const std::map<std::string, int>& a) {
    GateNetwork::Assignment out;
    for (const auto& [k, v] : a) out[k] = logic_from_int(v);
    return out;
}

} // namespace

PYBIND11_MODULE(_shilsim, m) {
    m.doc() = "Phase-encoded logic on self-sustaining oscillators: simulation core";
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "ShilsimError");

    py::enum_<LogicLevel>(m, "LogicLevel")
        .value("ZERO", LogicLevel::zero)
        .value("ONE", LogicLevel::one);

    py::class_<Phasor>(m, "Phasor")
        .def(py::init([](double amplitude, double phase_deg) {
                 return Phasor::from_polar(amplitude, phase_deg);
             }),
             py::arg("amplitude"), py::arg("phase_deg"))
        .def_readonly("amplitude", &Phasor::amplitude)
        .def_readonly("phase_deg", &Phasor::phase_deg)
        .def("__repr__", [](const Phasor& p) {
            std::ostringstream o;
            o << "Phasor(" << p.amplitude << ", " << p.phase_deg << ")";
            return o.str();
        });

    m.def("encode", &encode, py::arg("level"));
    m.def("phasor_not", &phasor_not, py::arg("p"));
    m.def(
        "phasor_maj3",
        [](const Phasor& a, const Phasor& b, const Phasor& c) { return phasor_maj3(a, b, c); },
        py::arg("a"), py::arg("b"), py::arg("c"));
    m.def(
        "classify",
        [](const Phasor& p, double ref_phase_deg) { return classify(p, ref_phase_deg); },
        py::arg("p"), py::arg("ref_phase_deg") = 0.0);

    py::class_<NonlinearResistorParams>(m, "NonlinearResistorParams")
        .def(py::init<>())
        .def_readwrite("k1", &NonlinearResistorParams::k1)
        .def_readwrite("k2", &NonlinearResistorParams::k2)
        .def_readwrite("k3", &NonlinearResistorParams::k3)
        .def_readwrite("knee", &NonlinearResistorParams::knee);
    m.def("eval_f", &eval_f, py::arg("params"), py::arg("v"));
    m.def("eval_dfdv", &eval_dfdv, py::arg("params"), py::arg("v"));
    m.def(
        "check_startup_condition",
        [](const NonlinearResistorParams& p, double r1, double r2) {
            const auto r = check_startup_condition(p, r1, r2);
            py::dict d;
            d["satisfied"] = r.satisfied;
            d["upper_bound"] = r.upper_bound;
            d["negative_conductance"] = r.negative_conductance;
            d["lower_bound"] = r.lower_bound;
            return d;
        },
        py::arg("params"), py::arg("r1"), py::arg("r2"));

    py::class_<TwoTankLatchConfig>(m, "TwoTankLatchConfig")
        .def(py::init<>())
        .def_readwrite("L1", &TwoTankLatchConfig::L1)
        .def_readwrite("C1", &TwoTankLatchConfig::C1)
        .def_readwrite("R1", &TwoTankLatchConfig::R1)
        .def_readwrite("L2", &TwoTankLatchConfig::L2)
        .def_readwrite("C2", &TwoTankLatchConfig::C2)
        .def_readwrite("R2", &TwoTankLatchConfig::R2)
        .def_readwrite("nonlinear", &TwoTankLatchConfig::nonlinear)
        .def_readwrite("f_ref", &TwoTankLatchConfig::f_ref);

    py::class_<RingLatchConfig>(m, "RingLatchConfig")
        .def(py::init<>())
        .def_readwrite("stage_gain", &RingLatchConfig::stage_gain)
        .def_readwrite("stage_tau", &RingLatchConfig::stage_tau)
        .def_readwrite("stage_asymmetry", &RingLatchConfig::stage_asymmetry)
        .def_readwrite("sync_amplitude", &RingLatchConfig::sync_amplitude)
        .def_readwrite("f_ref", &RingLatchConfig::f_ref);

    py::class_<GatedDLatch>(m, "GatedDLatch")
        .def(py::init<LogicLevel>(), py::arg("initial") = LogicLevel::zero)
        .def("step", &GatedDLatch::step, py::arg("d"), py::arg("en"))
        .def_property_readonly("q", &GatedDLatch::q);

    py::class_<FullAdderFSM>(m, "FullAdderFSM")
        .def(py::init<>())
        .def(
            "step",
            [](FullAdderFSM& fsm, LogicLevel a, LogicLevel b) {
                const auto r = fsm.step(a, b);
                return py::make_tuple(r.sum, r.new_state);
            },
            py::arg("a"), py::arg("b"))
        .def("reset", &FullAdderFSM::reset, py::arg("state") = LogicLevel::zero)
        .def_property_readonly("state", &FullAdderFSM::state);

    py::class_<GateNetwork>(m, "GateNetwork")
        .def("evaluate",
             [](const GateNetwork& net, const std::map<std::string, int>& inputs) {
                 return assignment_to_ints(net.evaluate(ints_to_assignment(inputs)));
             })
        .def_property_readonly("inputs", &GateNetwork::inputs)
        .def_property_readonly("outputs", &GateNetwork::outputs);
    m.def("parse_netlist", [](const std::string& text) { return parse_netlist(text); },
          py::arg("text"));
    m.def("make_full_adder", &make_full_adder);

    py::enum_<Encoding>(m, "Encoding")
        .value("LEVEL", Encoding::level)
        .value("PHASE", Encoding::phase);

    py::class_<NoiseScenario>(m, "NoiseScenario")
        .def(py::init<>())
        .def_readwrite("signal", &NoiseScenario::signal)
        .def_readwrite("noise", &NoiseScenario::noise)
        .def_readwrite("encoding", &NoiseScenario::encoding)
        .def_readwrite("trials", &NoiseScenario::trials)
        .def_readwrite("seed", &NoiseScenario::seed);
    m.def("analytic_ber", &analytic_ber, py::arg("scenario"));
    m.def(
        "monte_carlo_ber",
        [](const NoiseScenario& sc) {
            const auto r = monte_carlo_ber(sc);
            py::dict d;
            d["analytic"] = r.analytic;
            d["empirical"] = r.empirical;
            d["errors"] = r.errors;
            d["trials"] = r.trials;
            d["half_width_95"] = r.half_width_95;
            return d;
        },
        py::arg("scenario"));
    m.def(
        "ber_sweep",
        [](const std::vector<Encoding>& encodings, const std::vector<double>& ratios,
           std::uint64_t trials, std::uint64_t seed, double signal) {
            py::list rows;
            for (const auto& row : ber_sweep(encodings, ratios, trials, seed, signal)) {
                py::dict d;
                d["encoding"] = to_string(row.encoding);
                d["n_over_s"] = row.n_over_s;
                d["analytic"] = row.result.analytic;
                d["empirical"] = row.result.empirical;
                d["half_width_95"] = row.result.half_width_95;
                rows.append(d);
            }
            return rows;
        },
        py::arg("encodings"), py::arg("ratios"), py::arg("trials") = 1000000,
        py::arg("seed") = 0, py::arg("signal") = 1.0);

    m.def(
        "simulate_two_tank",
        [](const TwoTankLatchConfig& cfg, double cycles, double step_fraction, int stride) {
            auto model = build_two_tank(cfg);
            IntegratorConfig ic;
            ic.method = IntegratorMethod::rk4_fixed;
            ic.step = 1.0 / cfg.f_ref / step_fraction;
            ic.capture_stride = stride;
            ic.t_start = 0.0;
            ic.t_stop = cycles / cfg.f_ref;
            return trace_to_dict(integrate(model, ic, two_tank_warm_start(cfg)));
        },
        py::arg("config"), py::arg("cycles") = 50.0, py::arg("step_fraction") = 512.0,
        py::arg("stride") = 2);
    m.def(
        "simulate_ring",
        [](const RingLatchConfig& cfg, double cycles) {
            auto model = build_ring(cfg);
            IntegratorConfig ic;
            ic.method = IntegratorMethod::rk4_fixed;
            ic.step = cfg.stage_tau / 60.0;
            ic.t_start = 0.0;
            ic.t_stop = cycles / cfg.f_ref;
            return trace_to_dict(integrate(model, ic, model.initial_state));
        },
        py::arg("config"), py::arg("cycles") = 100.0);

    m.def("preset_names", &preset_names);
    m.def(
        "run_preset",
        [](const std::string& name, const std::string& out_dir) {
            auto cfg = preset_config(name);
            if (!out_dir.empty()) cfg.output.dir = out_dir;
            std::ostringstream log;
            const auto manifest = run_experiment(cfg, log);
            py::dict d;
            d["summary"] = manifest.summary.dump();
            d["log"] = log.str();
            d["wall_seconds"] = manifest.wall_seconds;
            return d;
        },
        py::arg("name"), py::arg("out_dir") = "");
    m.def("render_preset", [](const std::string& name) {
        return render_config(preset_config(name));
    });
}
