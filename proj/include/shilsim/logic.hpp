#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "shilsim/phasor.hpp"

namespace shilsim {

enum class GateKind { not_gate, maj_gate, const0, const1 };

struct Gate {
    GateKind kind = GateKind::not_gate;
    std::array<int, 3> inputs{-1, -1, -1};  // node ids; NOT uses [0], consts none
    int output = -1;
};

/// Combinational {NOT, MAJ} network over named nodes, plus declared gated
/// D latches whose outputs break feedback cycles. Gates evaluate on
/// phasors; observation points classify back to logic levels.
class GateNetwork {
public:
    /// Returns the node id, creating the node on first use.
    int node(const std::string& name);
    int find_node(const std::string& name) const;  // -1 if absent
    const std::string& node_name(int id) const { return node_names_[id]; }
    std::size_t node_count() const { return node_names_.size(); }

    void declare_input(const std::string& name);
    void declare_output(const std::string& name);
    void add_gate(GateKind kind, const std::vector<std::string>& inputs,
                  const std::string& output);
    void add_latch(const std::string& q, const std::string& d, const std::string& en);

    /// Validates drivers and orders gates topologically. Throws
    /// MultipleDrivers, UndrivenNode, or CombinationalCycle (naming the
    /// cycle). Must be called once before evaluation.
    void finalize();

    const std::vector<std::string>& inputs() const { return input_names_; }
    const std::vector<std::string>& outputs() const { return output_names_; }
    struct LatchDecl {
        std::string q, d, en;
    };
    const std::vector<LatchDecl>& latches() const { return latches_; }
    const std::vector<Gate>& gates() const { return gates_; }
    bool finalized() const { return finalized_; }

    using Assignment = std::map<std::string, LogicLevel>;

    /// Single-pass evaluation in topological order. All primary inputs
    /// (and latch outputs, for sequential networks) must be assigned.
    Assignment evaluate(const Assignment& inputs) const;

    /// Advances latch states by one enable evaluation: combinational
    /// evaluate, then each latch captures D when EN is ONE. Returns the
    /// full assignment after the step; `latch_state` is updated in place.
    Assignment step(const Assignment& inputs, Assignment& latch_state) const;

private:
    std::vector<std::string> node_names_;
    std::map<std::string, int> ids_;
    std::vector<Gate> gates_;
    std::vector<int> topo_;  // gate indices in evaluation order
    std::vector<std::string> input_names_;
    std::vector<std::string> output_names_;
    std::vector<LatchDecl> latches_;
    bool finalized_ = false;
};

/// Evaluates a finalized combinational network (free-function form).
GateNetwork::Assignment eval_network(const GateNetwork& net,
                                     const GateNetwork::Assignment& inputs);

/// Gated D latch built from the {NOT, MAJ} wiring
///   MAJ( MAJ(D, EN, 0), MAJ(D, NOT EN, 1), feedback ),
/// cross-checked against the behavioral contract (EN=1 follows D, EN=0
/// holds) on every step.
class GatedDLatch {
public:
    explicit GatedDLatch(LogicLevel initial = LogicLevel::zero) : q_(initial) {}
    LogicLevel step(LogicLevel d, LogicLevel en);
    LogicLevel q() const { return q_; }

private:
    LogicLevel q_;
};

/// Full-adder network over inputs {a, b, cin} with outputs {sum, cout},
/// built from {NOT, MAJ} only.
GateNetwork make_full_adder();

/// Mealy state machine: a full adder whose carry loops through a
/// master-slave latch pair. Inputs are sampled once per clock phase, so
/// arrival order within a phase cannot race.
class FullAdderFSM {
public:
    FullAdderFSM();

    struct StepResult {
        LogicLevel sum;
        LogicLevel new_state;
    };
    /// One full clock cycle: master captures the carry while CLK is ONE,
    /// slave publishes it when CLK falls.
    StepResult step(LogicLevel a, LogicLevel b);

    // Phase-level interface (used by the race-freedom tests).
    void set_input_a(LogicLevel a) { a_ = a; }
    void set_input_b(LogicLevel b) { b_ = b; }
    void clock_high();
    void clock_low();
    LogicLevel sum() const { return sum_; }
    LogicLevel state() const { return slave_.q(); }
    void reset(LogicLevel state = LogicLevel::zero);

private:
    GateNetwork adder_;
    GatedDLatch master_, slave_;
    LogicLevel a_ = LogicLevel::zero, b_ = LogicLevel::zero;
    LogicLevel sum_ = LogicLevel::zero;
};

} // namespace shilsim
