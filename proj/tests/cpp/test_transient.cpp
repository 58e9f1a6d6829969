#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shilsim/circuit.hpp"
#include "shilsim/transient.hpp"

using namespace shilsim;

namespace {

// two-state lossless LC: x = (v, i), v' = -i/C, i' = v/L
CircuitModel make_lc(double L, double C) {
    CircuitModel m;
    m.state_names = {"v", "i"};
    m.initial_state = {1.0, 0.0};
    m.derivative = [L, C](double, std::span<const double> x, std::span<double> dx) {
        dx[0] = -x[1] / C;
        dx[1] = x[0] / L;
    };
    m.jacobian = [L, C](double, std::span<const double>, std::span<double> j) {
        j[0] = 0.0;
        j[1] = -1.0 / C;
        j[2] = 1.0 / L;
        j[3] = 0.0;
    };
    m.components.push_back(Component{
        "C", "capacitor", true,
        [C, L](double, std::span<const double> x) {
            return ComponentReadout{x[0], -x[1]};
        },
        [C](double, std::span<const double> x) { return 0.5 * C * x[0] * x[0]; }});
    m.components.push_back(Component{
        "L", "inductor", true,
        [](double, std::span<const double> x) {
            return ComponentReadout{x[0], x[1]};
        },
        [L](double, std::span<const double> x) { return 0.5 * L * x[1] * x[1]; }});
    return m;
}

// single RC decay cell: v' = -v/(RC)
CircuitModel make_rc(double R, double C) {
    CircuitModel m;
    m.state_names = {"v"};
    m.initial_state = {1.0};
    m.derivative = [R, C](double, std::span<const double> x, std::span<double> dx) {
        dx[0] = -x[0] / (R * C);
    };
    return m;
}

double lc_final_error(double steps_per_period) {
    const double L = 1e-3, C = 1e-9;
    const double T = 2.0 * std::numbers::pi * std::sqrt(L * C);
    auto m = make_lc(L, C);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    ic.step = T / steps_per_period;
    ic.t_start = 0.0;
    ic.t_stop = T;
    ic.capture_components = false;
    auto tr = integrate(m, ic, {1.0, 0.0});
    const double v = tr.columns[0].back();
    const double i = tr.columns[1].back();
    return std::hypot(v - 1.0, i * std::sqrt(L / C));
}

} // namespace

TEST_CASE("lossless LC returns to its initial state after one period") {
    CHECK(lc_final_error(1000.0) < 1e-6);
}

TEST_CASE("rk4 order study shows at least fourth order minus slack") {
    const double e1 = lc_final_error(250.0);
    const double e2 = lc_final_error(500.0);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 3.5);
}

TEST_CASE("rc decay matches the analytic exponential") {
    const double R = 1e3, C = 1e-9;
    auto m = make_rc(R, C);
    for (auto method : {IntegratorMethod::rk4_fixed, IntegratorMethod::trap_implicit}) {
        IntegratorConfig ic;
        ic.method = method;
        ic.step = method == IntegratorMethod::rk4_fixed ? R * C / 1000.0 : 0.0;
        ic.rel_tol = 1e-9;
        ic.abs_tol = 1e-12;
        ic.t_start = 0.0;
        ic.t_stop = 3.0 * R * C;
        auto tr = integrate(m, ic, {1.0});
        const double expected = std::exp(-3.0);
        CHECK(tr.columns[0].back() == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("trapezoidal integration holds LC energy") {
    const double L = 1e-3, C = 1e-9;
    const double T = 2.0 * std::numbers::pi * std::sqrt(L * C);
    auto m = make_lc(L, C);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::trap_implicit;
    ic.step = T / 200.0;  // fixed-step trapezoid conserves the LC energy form
    ic.t_start = 0.0;
    ic.t_stop = 50.0 * T;
    ic.capture_components = false;
    auto tr = integrate(m, ic, {1.0, 0.0});
    const double e0 = 0.5 * C;
    const double v = tr.columns[0].back(), i = tr.columns[1].back();
    const double e_end = 0.5 * C * v * v + 0.5 * L * i * i;
    CHECK(e_end == doctest::Approx(e0).epsilon(1e-9));
}

TEST_CASE("events appear exactly in the trace times") {
    TwoTankLatchConfig cfg;
    const double period = 1.0 / cfg.f_ref;
    const double t_flip = 7.25 * period;  // deliberately off the step grid
    cfg.sw.schedule = {{t_flip, period / 2.0}};
    auto model = build_two_tank(cfg);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    ic.step = period / 128.0;
    ic.t_start = 0.0;
    ic.t_stop = 10.0 * period;
    ic.capture_components = false;
    auto tr = integrate(model, ic, two_tank_warm_start(cfg));
    bool found_start = false, found_end = false;
    for (double t : tr.times) {
        if (t == t_flip) found_start = true;
        if (t == t_flip + period / 2.0) found_end = true;
    }
    CHECK(found_start);
    CHECK(found_end);
    for (std::size_t i = 1; i < tr.times.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
    REQUIRE(tr.event_marks.size() == 2);
}

TEST_CASE("step_to_event is exact and consistent with sub-stepping") {
    auto m = make_lc(1e-3, 1e-9);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    const double T = 2.0 * std::numbers::pi * std::sqrt(1e-3 * 1e-9);
    ic.step = T / 500.0;
    std::vector<double> x{1.0, 0.0};
    // zero-length interval is the identity
    auto same = step_to_event(m, ic, x, 0.0, 0.0);
    CHECK(same == x);
    // one conforming run vs two sub-steps land on the same state
    auto direct = step_to_event(m, ic, x, 0.0, 0.37 * T);
    auto half = step_to_event(m, ic, x, 0.0, 0.17 * T);
    auto rest = step_to_event(m, ic, half, 0.17 * T, 0.37 * T);
    CHECK(direct[0] == doctest::Approx(rest[0]).epsilon(1e-8));
    CHECK(direct[1] * std::sqrt(1e-3 / 1e-9) ==
          doctest::Approx(rest[1] * std::sqrt(1e-3 / 1e-9)).epsilon(1e-6));
    CHECK_THROWS_AS(step_to_event(m, ic, x, 1.0, 0.5), ConfigInvalid);
}

TEST_CASE("adaptive trapezoid respects tolerances on the LC") {
    const double L = 1e-3, C = 1e-9;
    const double T = 2.0 * std::numbers::pi * std::sqrt(L * C);
    auto m = make_lc(L, C);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::trap_implicit;
    ic.step = 0.0;  // adaptive
    ic.rel_tol = 1e-8;
    ic.abs_tol = 1e-12;
    ic.t_start = 0.0;
    ic.t_stop = T;
    ic.capture_components = false;
    auto tr = integrate(m, ic, {1.0, 0.0});
    CHECK(std::hypot(tr.columns[0].back() - 1.0, tr.columns[1].back() * std::sqrt(L / C)) < 1e-4);
    CHECK(tr.times.back() == ic.t_stop);
}

TEST_CASE("non-finite states are reported with their time") {
    CircuitModel m;
    m.state_names = {"x"};
    m.initial_state = {1.0};
    m.derivative = [](double, std::span<const double> x, std::span<double> dx) {
        dx[0] = x[0] * x[0] * 1e9;  // finite-time blowup
    };
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    ic.step = 1e-6;
    ic.t_start = 0.0;
    ic.t_stop = 1.0;
    CHECK_THROWS_AS(integrate(m, ic, {1.0}), NonFiniteState);
}

TEST_CASE("dimension mismatches are rejected") {
    auto m = make_rc(1e3, 1e-9);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    ic.step = 1e-9;
    ic.t_start = 0.0;
    ic.t_stop = 1e-6;
    CHECK_THROWS_AS(integrate(m, ic, {1.0, 2.0}), ConfigInvalid);
}
