#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shilsim/circuit.hpp"
#include "shilsim/energy.hpp"
#include "shilsim/transient.hpp"

using namespace shilsim;

namespace {

// R in parallel with the LC tank plus a constant-conductance supply so the
// trace has both a dissipator and a supplier.
CircuitModel make_rlc_with_supply(double L, double C, double R, double g_supply) {
    CircuitModel m;
    m.state_names = {"v", "i"};
    m.initial_state = {1.0, 0.0};
    m.derivative = [=](double, std::span<const double> x, std::span<double> dx) {
        dx[0] = (-x[1] - x[0] / R + g_supply * x[0]) / C;
        dx[1] = x[0] / L;
    };
    m.components = {
        {"R", "resistor", false,
         [R](double, std::span<const double> x) {
             return ComponentReadout{x[0], x[0] / R};
         },
         nullptr},
        {"nonlinear", "source", false,
         [g_supply](double, std::span<const double> x) {
             return ComponentReadout{x[0], -g_supply * x[0]};
         },
         nullptr},
        {"C", "capacitor", true,
         [=](double, std::span<const double> x) {
             return ComponentReadout{x[0], -x[1] - x[0] / R + g_supply * x[0]};
         },
         [C](double, std::span<const double> x) { return 0.5 * C * x[0] * x[0]; }},
        {"L", "inductor", true,
         [](double, std::span<const double> x) {
             return ComponentReadout{x[0], x[1]};
         },
         [L](double, std::span<const double> x) { return 0.5 * L * x[1] * x[1]; }},
    };
    return m;
}

} // namespace

TEST_CASE("lossless LC keeps cumulative component energies at zero") {
    auto m = make_rlc_with_supply(1e-3, 1e-9, 1e30, 0.0);
    const double T = 2.0 * std::numbers::pi * std::sqrt(1e-3 * 1e-9);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    ic.step = T / 512.0;
    ic.t_start = 0.0;
    ic.t_stop = 8.0 * T;
    auto tr = integrate(m, ic, {1.0, 0.0});
    const double f_ref = 1.0 / T;
    EnergyReportOptions opts;
    opts.main_tank_component = "C";
    opts.tail_cycles = 5.0;
    const auto rep = energy_report(tr, m, f_ref, opts);
    const double e0 = 0.5e-9;
    for (std::size_t c = 0; c < rep.component_names.size(); ++c) {
        if (rep.component_names[c] == "R" || rep.component_names[c] == "nonlinear") {
            CHECK(std::abs(rep.cumulative_energy[c].back()) < 1e-6 * e0);
        }
    }
    for (double se : rep.stored_energy) CHECK(se == doctest::Approx(e0).epsilon(1e-6));
}

TEST_CASE("balanced supply and loss close the energy books") {
    // with g_supply = 1/R the orbit is neutral: supplied == dissipated
    const double L = 1e-3, C = 1e-9, R = 2e3;
    auto m = make_rlc_with_supply(L, C, R, 1.0 / R);
    const double T = 2.0 * std::numbers::pi * std::sqrt(L * C);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    ic.step = T / 512.0;
    ic.t_start = 0.0;
    ic.t_stop = 20.0 * T;
    auto tr = integrate(m, ic, {1.0, 0.0});
    EnergyReportOptions opts;
    opts.main_tank_component = "C";
    const auto rep = energy_report(tr, m, 1.0 / T, opts);
    CHECK(rep.per_cycle_dissipation ==
          doctest::Approx(rep.per_cycle_loss).epsilon(1e-6));
    // supplied per cycle equals v^2/(2R) * T for a unit-amplitude orbit
    const double expected = 0.5 / R * T;
    CHECK(rep.per_cycle_dissipation == doctest::Approx(expected).epsilon(1e-3));
    // peak main tank energy is the capacitor peak
    CHECK(rep.peak_main_tank_energy == doctest::Approx(0.5 * C).epsilon(1e-4));
    CHECK(rep.q_effective ==
          doctest::Approx(rep.peak_main_tank_energy / rep.per_cycle_dissipation));
    CHECK(rep.q_standard == doctest::Approx(2.0 * std::numbers::pi * rep.q_effective));
    // power balance: net energy stays near zero and keeps crossing it
    for (double ne : rep.net_energy) CHECK(std::abs(ne) < 2e-3 * 0.5 * C);
    CHECK(rep.net_energy_zero_crossings.size() > 10);
}

TEST_CASE("energy report input validation") {
    auto m = make_rlc_with_supply(1e-3, 1e-9, 1e3, 0.0);
    const double T = 2.0 * std::numbers::pi * std::sqrt(1e-3 * 1e-9);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    ic.step = T / 128.0;
    ic.t_start = 0.0;
    ic.t_stop = 2.0 * T;  // too short for the 5-cycle precondition
    auto tr = integrate(m, ic, {1.0, 0.0});
    EnergyReportOptions short_opts;
    short_opts.main_tank_component = "C";
    CHECK_THROWS_AS(energy_report(tr, m, 1.0 / T, short_opts), TooShort);

    ic.t_stop = 20.0 * T;
    ic.capture_components = false;  // missing p columns
    auto bare = integrate(m, ic, {1.0, 0.0});
    CHECK_THROWS_AS(energy_report(bare, m, 1.0 / T, short_opts), MissingColumns);
}

TEST_CASE("empty flip list yields an empty audit") {
    auto m = make_rlc_with_supply(1e-3, 1e-9, 2e3, 5e-4);
    const double T = 2.0 * std::numbers::pi * std::sqrt(1e-3 * 1e-9);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    ic.step = T / 256.0;
    ic.t_start = 0.0;
    ic.t_stop = 20.0 * T;
    auto tr = integrate(m, ic, {1.0, 0.0});
    FlipAuditOptions fopts;
    fopts.main_tank_component = "C";
    CHECK(flip_energy_audit(tr, m, 1.0 / T, {}, fopts).empty());
    CHECK_THROWS_AS(flip_energy_audit(tr, m, 1.0 / T, {{-1.0, -0.5}}, fopts), FlipNotInTrace);
}
