#include <doctest.h>

#include <random>

#include "shilsim/logic.hpp"

using namespace shilsim;

namespace {
LogicLevel L(int v) { return logic_from_int(v); }
} // namespace

TEST_CASE("full adder network matches integer addition exhaustively") {
    const auto net = make_full_adder();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                const auto out = net.evaluate({{"a", L(a)}, {"b", L(b)}, {"cin", L(c)}});
                const int total = a + b + c;
                CHECK(logic_to_int(out.at("sum")) == total % 2);
                CHECK(logic_to_int(out.at("cout")) == total / 2);
            }
}

TEST_CASE("xor built from NOT and MAJ matches boolean xor") {
    GateNetwork net;
    net.declare_input("a");
    net.declare_input("b");
    net.declare_output("x");
    net.add_gate(GateKind::const0, {}, "zero");
    net.add_gate(GateKind::const1, {}, "one");
    net.add_gate(GateKind::maj_gate, {"zero", "a", "b"}, "and_ab");
    net.add_gate(GateKind::maj_gate, {"one", "a", "b"}, "or_ab");
    net.add_gate(GateKind::not_gate, {"and_ab"}, "nand_ab");
    net.add_gate(GateKind::maj_gate, {"zero", "or_ab", "nand_ab"}, "x");
    net.finalize();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const auto out = net.evaluate({{"a", L(a)}, {"b", L(b)}});
            CHECK(logic_to_int(out.at("x")) == (a ^ b));
        }
}

TEST_CASE("unassigned inputs are rejected") {
    const auto net = make_full_adder();
    CHECK_THROWS_AS(net.evaluate({{"a", L(1)}, {"b", L(0)}}), UnassignedInput);
    CHECK_THROWS_AS(net.evaluate({{"a", L(1)}, {"b", L(0)}, {"cin", L(0)}, {"bogus", L(1)}}),
                    UnassignedInput);
}

TEST_CASE("gated D latch follows and holds") {
    GatedDLatch latch(LogicLevel::zero);
    CHECK(latch.step(L(1), L(1)) == L(1));   // set to D
    CHECK(latch.step(L(0), L(0)) == L(1));   // hold
    CHECK(latch.step(L(0), L(1)) == L(0));   // follow
    CHECK(latch.step(L(1), L(0)) == L(0));   // hold
}

TEST_CASE("latch gate wiring equals the behavioral contract on random sequences") {
    std::mt19937 rng(99);
    GatedDLatch latch(LogicLevel::zero);
    LogicLevel model = LogicLevel::zero;
    for (int step = 0; step < 1000; ++step) {
        const LogicLevel d = L(static_cast<int>(rng() & 1));
        const LogicLevel en = L(static_cast<int>(rng() & 1));
        // step() itself cross-checks the MAJ wiring against the contract
        // and throws on mismatch; track the contract independently too.
        const LogicLevel q = latch.step(d, en);
        if (en == LogicLevel::one) model = d;
        CHECK(q == model);
    }
}

TEST_CASE("full adder FSM walks its state graph") {
    FullAdderFSM fsm;
    struct Case {
        int state, a, b, sum, next;
    };
    // all 2 states x 4 inputs, from full-adder arithmetic
    const Case cases[] = {
        {0, 0, 0, 0, 0}, {0, 0, 1, 1, 0}, {0, 1, 0, 1, 0}, {0, 1, 1, 0, 1},
        {1, 0, 0, 1, 0}, {1, 0, 1, 0, 1}, {1, 1, 0, 0, 1}, {1, 1, 1, 1, 1},
    };
    for (const auto& c : cases) {
        fsm.reset(L(c.state));
        const auto r = fsm.step(L(c.a), L(c.b));
        CHECK(logic_to_int(r.sum) == c.sum);
        CHECK(logic_to_int(r.new_state) == c.next);
    }
    // the quoted transitions: 0->1 only on a=b=1, 1->0 only on a=b=0
    fsm.reset(L(0));
    CHECK(fsm.step(L(1), L(1)).new_state == L(1));
    fsm.reset(L(0));
    CHECK(fsm.step(L(0), L(1)).new_state == L(0));
    fsm.reset(L(1));
    CHECK(fsm.step(L(0), L(0)).new_state == L(0));
}

TEST_CASE("master-slave input order within a phase cannot race") {
    for (int state = 0; state < 2; ++state)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                FullAdderFSM f1, f2;
                f1.reset(L(state));
                f2.reset(L(state));
                f1.set_input_a(L(a));
                f1.set_input_b(L(b));
                f2.set_input_b(L(b));  // reversed arrival order
                f2.set_input_a(L(a));
                f1.clock_high();
                f2.clock_high();
                f1.clock_low();
                f2.clock_low();
                CHECK(f1.state() == f2.state());
                CHECK(f1.sum() == f2.sum());
            }
}

TEST_CASE("bit-serial streams add like integers for all 6-bit pairs") {
    FullAdderFSM fsm;
    for (unsigned a = 0; a < 64; ++a) {
        for (unsigned b = 0; b < 64; ++b) {
            fsm.reset(LogicLevel::zero);
            unsigned sum = 0;
            for (int k = 0; k <= 6; ++k) {
                const auto r = fsm.step(L((a >> k) & 1), L((b >> k) & 1));
                sum |= static_cast<unsigned>(logic_to_int(r.sum)) << k;
            }
            REQUIRE(sum == a + b);
        }
    }
}

TEST_CASE("network-level latch stepping") {
    GateNetwork net;
    net.declare_input("d");
    net.declare_input("en");
    net.add_latch("q", "d", "en");
    net.finalize();
    GateNetwork::Assignment state;
    auto out = net.step({{"d", L(1)}, {"en", L(1)}}, state);
    CHECK(state.at("q") == L(1));
    out = net.step({{"d", L(0)}, {"en", L(0)}}, state);
    CHECK(state.at("q") == L(1));
    out = net.step({{"d", L(0)}, {"en", L(1)}}, state);
    CHECK(state.at("q") == L(0));
    (void)out;
}
