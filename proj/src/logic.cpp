#include "shilsim/logic.hpp"

#include <algorithm>

namespace shilsim {

int GateNetwork::node(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(node_names_.size());
    node_names_.push_back(name);
    ids_.emplace(name, id);
    return id;
}

int GateNetwork::find_node(const std::string& name) const {
    auto it = ids_.find(name);
    return it == ids_.end() ? -1 : it->second;
}

void GateNetwork::declare_input(const std::string& name) {
    node(name);
    input_names_.push_back(name);
}

void GateNetwork::declare_output(const std::string& name) {
    node(name);
    output_names_.push_back(name);
}

void GateNetwork::add_gate(GateKind kind, const std::vector<std::string>& inputs,
                           const std::string& output) {
    const std::size_t want = kind == GateKind::maj_gate ? 3
                           : kind == GateKind::not_gate ? 1 : 0;
    if (inputs.size() != want) {
        throw ConfigInvalid("gate '" + output + "' has wrong input count");
    }
    Gate g;
    g.kind = kind;
    for (std::size_t i = 0; i < inputs.size(); ++i) g.inputs[i] = node(inputs[i]);
    g.output = node(output);
    gates_.push_back(g);
}

void GateNetwork::add_latch(const std::string& q, const std::string& d, const std::string& en) {
    node(q);
    node(d);
    node(en);
    latches_.push_back({q, d, en});
}

void GateNetwork::finalize() {
    std::vector<int> driver(node_names_.size(), -1);  // gate index, -2 input/latch
    for (const auto& in : input_names_) driver[ids_[in]] = -2;
    for (const auto& l : latches_) {
        if (driver[ids_[l.q]] != -1) {
            throw MultipleDrivers("node '" + l.q + "' driven more than once");
        }
        driver[ids_[l.q]] = -2;
    }
    for (std::size_t g = 0; g < gates_.size(); ++g) {
        const int out = gates_[g].output;
        if (driver[out] != -1) {
            throw MultipleDrivers("node '" + node_names_[out] + "' driven more than once");
        }
        driver[out] = static_cast<int>(g);
    }
    for (std::size_t n = 0; n < node_names_.size(); ++n) {
        if (driver[n] == -1) {
            throw UndrivenNode("node '" + node_names_[n] + "' is never driven and not an input");
        }
    }

    // Depth-first topological order over gates; latch outputs are sources.
    topo_.clear();
    std::vector<int> mark(gates_.size(), 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::string> path;
    auto visit = [&](auto&& self, int g) -> void {
        if (mark[g] == 2) return;
        if (mark[g] == 1) {
            std::string cycle;
            for (const auto& p : path) cycle += p + " -> ";
            cycle += node_names_[gates_[g].output];
            throw CombinationalCycle("combinational cycle: " + cycle);
        }
        mark[g] = 1;
        path.push_back(node_names_[gates_[g].output]);
        const std::size_t n_in = gates_[g].kind == GateKind::maj_gate ? 3
                               : gates_[g].kind == GateKind::not_gate ? 1 : 0;
        for (std::size_t i = 0; i < n_in; ++i) {
            const int d = driver[gates_[g].inputs[i]];
            if (d >= 0) self(self, d);
        }
        path.pop_back();
        mark[g] = 2;
        topo_.push_back(g);
    };
    for (std::size_t g = 0; g < gates_.size(); ++g) visit(visit, static_cast<int>(g));
    finalized_ = true;
}

GateNetwork::Assignment GateNetwork::evaluate(const Assignment& inputs) const {
    if (!finalized_) throw ConfigInvalid("network not finalized");
    std::vector<Phasor> value(node_names_.size());
    std::vector<bool> set(node_names_.size(), false);
    for (const auto& [name, level] : inputs) {
        const int id = find_node(name);
        if (id < 0) throw UnassignedInput("assignment names unknown node '" + name + "'");
        value[id] = encode(level);
        set[id] = true;
    }
    for (const auto& in : input_names_) {
        if (!set[find_node(in)]) throw UnassignedInput("primary input '" + in + "' unassigned");
    }
    for (const auto& l : latches_) {
        if (!set[find_node(l.q)]) {
            throw UnassignedInput("latch output '" + l.q + "' needs a state assignment");
        }
    }
    for (int g : topo_) {
        const Gate& gate = gates_[g];
        Phasor out;
        switch (gate.kind) {
            case GateKind::const0: out = encode(LogicLevel::zero); break;
            case GateKind::const1: out = encode(LogicLevel::one); break;
            case GateKind::not_gate: out = phasor_not(value[gate.inputs[0]]); break;
            case GateKind::maj_gate:
                out = phasor_maj3(value[gate.inputs[0]], value[gate.inputs[1]],
                                  value[gate.inputs[2]]);
                break;
        }
        value[gate.output] = out;
        set[gate.output] = true;
    }
    Assignment result;
    for (std::size_t n = 0; n < node_names_.size(); ++n) {
        if (set[n]) result[node_names_[n]] = classify(value[n], 0.0);
    }
    return result;
}

GateNetwork::Assignment GateNetwork::step(const Assignment& inputs,
                                          Assignment& latch_state) const {
    Assignment all = inputs;
    for (const auto& l : latches_) {
        auto it = latch_state.find(l.q);
        all[l.q] = it == latch_state.end() ? LogicLevel::zero : it->second;
    }
    Assignment result = evaluate(all);
    for (const auto& l : latches_) {
        if (result.at(l.en) == LogicLevel::one) latch_state[l.q] = result.at(l.d);
        else latch_state[l.q] = all[l.q];
    }
    return result;
}

GateNetwork::Assignment eval_network(const GateNetwork& net,
                                     const GateNetwork::Assignment& inputs) {
    return net.evaluate(inputs);
}

LogicLevel GatedDLatch::step(LogicLevel d, LogicLevel en) {
    const Phasor i1 = phasor_maj3(encode(d), encode(en), encode(LogicLevel::zero));
    const Phasor i2 = phasor_maj3(encode(d), phasor_not(encode(en)), encode(LogicLevel::one));
    const Phasor qn = phasor_maj3(i1, i2, encode(q_));
    const LogicLevel next = classify(qn, 0.0);
    const LogicLevel expected = en == LogicLevel::one ? d : q_;
    if (next != expected) {
        throw Error("latch_contract", "gate wiring disagrees with the D-latch contract");
    }
    q_ = next;
    return q_;
}

GateNetwork make_full_adder() {
    GateNetwork net;
    net.declare_input("a");
    net.declare_input("b");
    net.declare_input("cin");
    net.declare_output("sum");
    net.declare_output("cout");
    net.add_gate(GateKind::const0, {}, "zero");
    net.add_gate(GateKind::const1, {}, "one");
    net.add_gate(GateKind::maj_gate, {"a", "b", "cin"}, "cout");
    // a XOR b = (a OR b) AND NOT(a AND b)
    net.add_gate(GateKind::maj_gate, {"zero", "a", "b"}, "ab_and");
    net.add_gate(GateKind::maj_gate, {"one", "a", "b"}, "ab_or");
    net.add_gate(GateKind::not_gate, {"ab_and"}, "ab_nand");
    net.add_gate(GateKind::maj_gate, {"zero", "ab_or", "ab_nand"}, "ab_xor");
    net.add_gate(GateKind::maj_gate, {"zero", "ab_xor", "cin"}, "x_and");
    net.add_gate(GateKind::maj_gate, {"one", "ab_xor", "cin"}, "x_or");
    net.add_gate(GateKind::not_gate, {"x_and"}, "x_nand");
    net.add_gate(GateKind::maj_gate, {"zero", "x_or", "x_nand"}, "sum");
    net.finalize();
    return net;
}

FullAdderFSM::FullAdderFSM() : adder_(make_full_adder()) {}

void FullAdderFSM::clock_high() {
    // Inputs and the published state are sampled once at the phase edge.
    GateNetwork::Assignment in{{"a", a_}, {"b", b_}, {"cin", slave_.q()}};
    const auto out = adder_.evaluate(in);
    sum_ = out.at("sum");
    master_.step(out.at("cout"), LogicLevel::one);
    slave_.step(LogicLevel::zero, LogicLevel::zero);  // holds
}

void FullAdderFSM::clock_low() {
    master_.step(LogicLevel::zero, LogicLevel::zero);  // holds
    slave_.step(master_.q(), LogicLevel::one);
}

FullAdderFSM::StepResult FullAdderFSM::step(LogicLevel a, LogicLevel b) {
    set_input_a(a);
    set_input_b(b);
    clock_high();
    clock_low();
    return {sum_, slave_.q()};
}

void FullAdderFSM::reset(LogicLevel state) {
    master_ = GatedDLatch(state);
    slave_ = GatedDLatch(state);
    sum_ = LogicLevel::zero;
}

} // namespace shilsim
