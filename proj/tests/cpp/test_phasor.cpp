#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "shilsim/phasor.hpp"

using namespace shilsim;

namespace {

// independent boolean 3-input majority
bool bool_maj(bool a, bool b, bool c) { return (a && b) || (a && c) || (b && c); }

LogicLevel L(int v) { return logic_from_int(v); }

} // namespace

TEST_CASE("encode produces the canonical phasors") {
    CHECK(encode(LogicLevel::one).amplitude == 1.0);
    CHECK(encode(LogicLevel::one).phase_deg == 0.0);
    CHECK(encode(LogicLevel::zero).amplitude == 1.0);
    CHECK(encode(LogicLevel::zero).phase_deg == 180.0);
    for (int v : {0, 1}) {
        const auto p = encode(L(v));
        const auto q = encode(logic_not(L(v)));
        CHECK(std::abs(angle_difference_deg(p.phase_deg, q.phase_deg)) == doctest::Approx(180.0));
    }
}

TEST_CASE("phasor_not negates") {
    auto p = phasor_not(Phasor{1.0, 0.0});
    CHECK(p.phase_deg == doctest::Approx(180.0));
    p = phasor_not(Phasor{1.0, 180.0});
    CHECK(p.phase_deg == doctest::Approx(0.0));
    p = phasor_not(Phasor{0.5, 30.0});
    CHECK(p.amplitude == doctest::Approx(0.5));
    CHECK(p.phase_deg == doctest::Approx(210.0));
}

TEST_CASE("phasor_not is an involution in rectangular form") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> amp(0.0, 3.0), ph(0.0, 360.0);
    for (int i = 0; i < 200; ++i) {
        const Phasor p{amp(rng), ph(rng)};
        const auto q = phasor_not(phasor_not(p));
        CHECK(std::abs(p.rect() - q.rect()) < 1e-12);
    }
}

TEST_CASE("majority matches the boolean truth table exhaustively") {
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                const auto m = phasor_maj3(encode(L(a)), encode(L(b)), encode(L(c)));
                CHECK(m.amplitude == doctest::Approx(1.0));
                CHECK(classify(m, 0.0) == L(bool_maj(a, b, c)));
            }
    // the two worked examples
    const auto m1 = phasor_maj3(encode(L(0)), encode(L(0)), encode(L(1)));
    CHECK(m1.amplitude == doctest::Approx(1.0));
    CHECK(m1.phase_deg == doctest::Approx(180.0));
    const auto m2 = phasor_maj3(encode(L(1)), encode(L(1)), encode(L(1)));
    CHECK(m2.amplitude == doctest::Approx(1.0));
    CHECK(m2.phase_deg == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pinned majority gives AND and OR") {
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const auto mand = phasor_maj3(encode(L(0)), encode(L(a)), encode(L(b)));
            CHECK(classify(mand, 0.0) == L(a && b));
            const auto mor = phasor_maj3(encode(L(1)), encode(L(a)), encode(L(b)));
            CHECK(classify(mor, 0.0) == L(a || b));
        }
}

TEST_CASE("majority is symmetric under input permutations") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> amp(0.1, 1.0), ph(0.0, 360.0);
    for (int i = 0; i < 50; ++i) {
        std::array<Phasor, 3> in = {Phasor{amp(rng), ph(rng)}, Phasor{amp(rng), ph(rng)},
                                    Phasor{amp(rng), ph(rng)}};
        std::array<int, 3> idx = {0, 1, 2};
        Phasor first{};
        bool have_first = false;
        std::sort(idx.begin(), idx.end());
        do {
            try {
                const auto m = phasor_maj3(in[idx[0]], in[idx[1]], in[idx[2]]);
                if (!have_first) {
                    first = m;
                    have_first = true;
                } else {
                    CHECK(std::abs(m.rect() - first.rect()) < 1e-12);
                }
            } catch (const DegenerateSum&) {
                have_first = true;  // all permutations degenerate alike
            }
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
}

TEST_CASE("degenerate sums are flagged") {
    const Phasor up{1.0, 90.0};
    CHECK_THROWS_AS(phasor_maj3(encode(L(0)), encode(L(1)), Phasor{0.0, 0.0}), DegenerateSum);
    CHECK_NOTHROW(phasor_maj3(encode(L(0)), encode(L(1)), up));
}

TEST_CASE("classification examples and guard band") {
    CHECK(classify(Phasor{1.0, 5.0}, 0.0) == LogicLevel::one);
    CHECK(classify(Phasor{0.7, 170.0}, 0.0) == LogicLevel::zero);
    CHECK_THROWS_AS(classify(Phasor{1.0, 90.0}, 0.0), MetastablePhase);
    CHECK_THROWS_AS(classify(Phasor{1.0, 270.5}, 0.0), MetastablePhase);
    CHECK_THROWS_AS(classify(Phasor{1e-12, 10.0}, 0.0), AmplitudeTooSmall);
    // classify(encode(x)) = x for both levels, any reference rotation
    for (int v : {0, 1}) {
        CHECK(classify(encode(L(v)), 0.0) == L(v));
    }
    // nonzero reference phase
    CHECK(classify(Phasor{1.0, 100.0}, 90.0) == LogicLevel::one);
    CHECK(classify(Phasor{1.0, 280.0}, 90.0) == LogicLevel::zero);
}

TEST_CASE("wrap and difference helpers") {
    CHECK(wrap_degrees(-10.0) == doctest::Approx(350.0));
    CHECK(wrap_degrees(720.0) == doctest::Approx(0.0));
    CHECK(angle_difference_deg(350.0, 10.0) == doctest::Approx(-20.0));
    CHECK(angle_difference_deg(10.0, 350.0) == doctest::Approx(20.0));
}
