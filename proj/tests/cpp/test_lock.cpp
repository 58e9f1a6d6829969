#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shilsim/lock.hpp"

using namespace shilsim;

namespace {

constexpr double kFref = 1e6;

WaveformTrace synth(double f_signal, double phase_deg, double cycles,
                    int samples_per_cycle = 64, double amplitude = 1.0) {
    WaveformTrace tr;
    tr.names = {"x"};
    tr.columns.resize(1);
    const double dt = 1.0 / kFref / samples_per_cycle;
    const long n = std::lround(cycles * samples_per_cycle);
    for (long i = 0; i <= n; ++i) {
        const double t = i * dt;
        tr.times.push_back(t);
        tr.columns[0].push_back(amplitude * std::cos(2.0 * std::numbers::pi * f_signal * t +
                                                     phase_deg * std::numbers::pi / 180.0));
    }
    return tr;
}

} // namespace

TEST_CASE("extract_phase reference conventions") {
    auto tr = synth(kFref, 0.0, 4.0);
    auto ps = extract_phase(tr, "x", kFref, 0.0);
    CHECK(ps.phase_deg == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(ps.amplitude == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(ps.t_center == doctest::Approx(0.5 / kFref));

    tr = synth(kFref, -90.0, 4.0);
    ps = extract_phase(tr, "x", kFref, 0.0);
    CHECK(ps.phase_deg == doctest::Approx(270.0).epsilon(1e-4));
}

TEST_CASE("half-period delay shifts the phase by 180 degrees") {
    // Any REF-periodic waveform delayed by half a period reports a phase
    // exactly 180 degrees away. Use a harmonically rich shape.
    auto rich = [](double t) {
        const double u = 2.0 * std::numbers::pi * kFref * t;
        return std::cos(u + 0.6) + 0.4 * std::cos(2.0 * u - 1.0) + 0.2 * std::sin(3.0 * u);
    };
    WaveformTrace base, delayed;
    base.names = delayed.names = {"x"};
    base.columns.resize(1);
    delayed.columns.resize(1);
    const double dt = 1.0 / kFref / 128.0;
    const double half = 0.5 / kFref;
    for (long i = 0; i <= 6 * 128; ++i) {
        const double t = i * dt;
        base.times.push_back(t);
        delayed.times.push_back(t);
        base.columns[0].push_back(rich(t));
        delayed.columns[0].push_back(rich(t + half));
    }
    const auto a = extract_phase(base, "x", kFref, 2.0 / kFref);
    const auto b = extract_phase(delayed, "x", kFref, 2.0 / kFref);
    CHECK(std::abs(angle_difference_deg(b.phase_deg, a.phase_deg)) ==
          doctest::Approx(180.0).epsilon(1e-9));
    CHECK(b.amplitude == doctest::Approx(a.amplitude).epsilon(1e-9));
}

TEST_CASE("time shift equivariance and amplitude invariance") {
    auto tr = synth(kFref, 77.0, 8.0, 96, 0.37);
    const auto base = extract_phase(tr, "x", kFref, 0.0);
    for (double dt_frac : {0.125, 0.31, 0.5, 0.77}) {
        WaveformTrace shifted = tr;
        const double dt = dt_frac / kFref;
        for (auto& t : shifted.times) t += dt;
        const auto ps = extract_phase(shifted, "x", kFref, dt);
        // shifting the record in time rotates the reported phase by -360 f dt
        const double expected = wrap_degrees(base.phase_deg - 360.0 * kFref * dt);
        CHECK(std::abs(angle_difference_deg(ps.phase_deg, expected)) < 0.1);
        CHECK(ps.amplitude == doctest::Approx(base.amplitude).epsilon(1e-6));
    }
}

TEST_CASE("extract_phase error paths") {
    auto tr = synth(kFref, 0.0, 2.0);
    CHECK_THROWS_AS(extract_phase(tr, "x", kFref, 1.5 / kFref), WindowOutOfRange);
    CHECK_THROWS_AS(extract_phase(tr, "x", kFref, -0.5 / kFref), WindowOutOfRange);
    CHECK_THROWS_AS(extract_phase(tr, "missing", kFref, 0.0), MissingColumns);
    auto sparse = synth(kFref, 0.0, 2.0, 16);
    CHECK_THROWS_AS(extract_phase(sparse, "x", kFref, 0.0), TooShort);
    auto flat = synth(kFref, 0.0, 2.0, 64, 0.0);
    CHECK_THROWS_AS(extract_phase(flat, "x", kFref, 0.0), AmplitudeTooSmall);
}

TEST_CASE("detect_lock on a synthetic locked trace") {
    auto tr = synth(kFref, 37.0, 40.0);
    const auto rep = detect_lock(tr, "x", kFref, 0.5);
    CHECK(rep.locked);
    CHECK(rep.lock_phase_deg == doctest::Approx(37.0).epsilon(0.01));
    CHECK(std::abs(rep.drift_deg_per_cycle) < 1e-3);
    REQUIRE(rep.classified_bit.has_value());
    CHECK(*rep.classified_bit == LogicLevel::one);
    REQUIRE(rep.settle_time.has_value());
    CHECK(*rep.settle_time <= tr.times.front() + 1.0 / kFref);
}

TEST_CASE("detect_lock flags a detuned trace as drifting") {
    // 0.05% detuning: 0.18 deg/cycle, 7.2 deg over a 40-cycle trace
    auto tr = synth(kFref * 1.0005, 0.0, 40.0);
    const auto rep = detect_lock(tr, "x", kFref, 0.5);
    CHECK_FALSE(rep.locked);
    CHECK(rep.drift_deg_per_cycle == doctest::Approx(0.18).epsilon(0.05));
}

TEST_CASE("detect_lock precondition") {
    auto tr = synth(kFref, 0.0, 10.0);
    CHECK_THROWS_AS(detect_lock(tr, "x", kFref, 0.5), TooShort);
}

TEST_CASE("classified bit is complementary for antiphase traces") {
    auto t0 = synth(kFref, 170.0, 50.0);
    auto t1 = synth(kFref, 350.0, 50.0);
    const auto r0 = detect_lock(t0, "x", kFref, 0.5);
    const auto r1 = detect_lock(t1, "x", kFref, 0.5);
    REQUIRE(r0.classified_bit.has_value());
    REQUIRE(r1.classified_bit.has_value());
    CHECK(*r0.classified_bit == LogicLevel::zero);
    CHECK(*r1.classified_bit == LogicLevel::one);
    // re-running on the second half of the tail preserves the bit
    WaveformTrace half;
    half.names = t0.names;
    half.columns.resize(1);
    for (std::size_t i = t0.times.size() / 2; i < t0.times.size(); ++i) {
        half.times.push_back(t0.times[i]);
        half.columns[0].push_back(t0.columns[0][i]);
    }
    const auto rh = detect_lock(half, "x", kFref, 0.5);
    CHECK(rh.classified_bit == r0.classified_bit);
}

TEST_CASE("near-threshold phases classify as unresolved") {
    auto tr = synth(kFref, 90.2, 30.0);
    const auto rep = detect_lock(tr, "x", kFref, 0.5);
    CHECK(rep.locked);
    CHECK_FALSE(rep.classified_bit.has_value());
}
