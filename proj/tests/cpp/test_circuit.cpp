#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shilsim/circuit.hpp"
#include "shilsim/transient.hpp"

using namespace shilsim;

TEST_CASE("two-tank config validation names the offending field") {
    TwoTankLatchConfig cfg;
    cfg.L1 = -1e-9;
    try {
        cfg.validate();
        FAIL("expected ConfigInvalid");
    } catch (const ConfigInvalid& e) {
        CHECK(std::string(e.what()).find("L1") != std::string::npos);
    }
    cfg = TwoTankLatchConfig{};
    cfg.f_ref = cfg.sync.f_sync / 2.0 + 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigInvalid);
}

TEST_CASE("tank two resonates at twice the main tank frequency") {
    const TwoTankLatchConfig cfg;
    const double f1 = 1.0 / (2.0 * std::numbers::pi * std::sqrt(cfg.L1 * 1e-6));
    const double f2 = 1.0 / (2.0 * std::numbers::pi * std::sqrt(cfg.L2 * cfg.C2));
    CHECK(cfg.L2 == doctest::Approx(cfg.L1 / 2.0));
    CHECK(cfg.C2 == doctest::Approx(1e-6 / 2.0));
    CHECK(f2 == doctest::Approx(2.0 * f1).epsilon(1e-12));
}

TEST_CASE("passive circuit decays with the nonlinearity off") {
    TwoTankLatchConfig cfg;
    cfg.nonlinear.k1 = 0.0;
    cfg.nonlinear.k3 = 0.0;
    cfg.sync.amplitude = 0.0;
    cfg.R1 = 1.0;  // short decay time constant for the test
    cfg.R2 = 1.0;
    auto model = build_two_tank(cfg);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    const double period = 1.0 / cfg.f_ref;
    ic.step = period / 256.0;
    ic.t_start = 0.0;
    ic.t_stop = 60.0 * period;
    auto trace = integrate(model, ic, {0.5, 0.1, 0.0, 0.0});
    const double e0 = model.stored_energy(0.0, std::vector<double>{0.5, 0.1, 0.0, 0.0});
    const auto& se = trace.column("stored_energy");
    CHECK(se.back() < 0.1 * e0);
    for (std::size_t i = 1; i < se.size(); ++i) CHECK(se[i] <= se[i - 1] * 1.000001);
}

TEST_CASE("component readouts obey the power balance identity") {
    // Tellegen: the component powers (passive convention) sum to zero at
    // any state, with storage elements carrying d(stored)/dt.
    TwoTankLatchConfig cfg;
    cfg.sw.schedule = {{1e-6, 5e-7}};
    auto model = build_two_tank(cfg);
    std::vector<double> x{0.7, -0.2, 12.0, 3.0};
    for (double t : {0.0, 1.2e-6, 2.0e-6}) {
        double sum = 0.0;
        for (const auto& c : model.components) {
            sum += component_power(model, c.name, t, x);
        }
        CHECK(sum == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("unknown component is rejected") {
    auto model = build_two_tank(TwoTankLatchConfig{});
    std::vector<double> x{0, 0, 0, 0};
    CHECK_THROWS_AS(component_power(model, "R7", 0.0, x), UnknownComponent);
}

TEST_CASE("warm start lies on the main-tank orbit") {
    const TwoTankLatchConfig cfg;
    const auto a = two_tank_amplitude_estimate(cfg);
    CHECK(a > 0.3);
    const auto x0 = two_tank_warm_start(cfg, 0.0);
    CHECK(x0[0] == doctest::Approx(a));
    CHECK(x0[2] == doctest::Approx(0.0));
    const auto x90 = two_tank_warm_start(cfg, 90.0);
    CHECK(x90[0] == doctest::Approx(0.0).epsilon(1e-9));
    const double w = 2.0 * std::numbers::pi * cfg.f_ref;
    CHECK(x90[2] == doctest::Approx(a / (w * cfg.L1)));
}

TEST_CASE("ring config validation") {
    RingLatchConfig cfg;
    cfg.stage_gain = 0.8;
    CHECK_THROWS_AS(cfg.validate(), ConfigInvalid);
    cfg = RingLatchConfig{};
    cfg.n_stages = 5;
    CHECK_THROWS_AS(cfg.validate(), ConfigInvalid);
    cfg = RingLatchConfig{};
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("symmetric ring state stays on the symmetric manifold") {
    RingLatchConfig cfg;
    cfg.sync_amplitude = 0.0;
    auto model = build_ring(cfg);
    IntegratorConfig ic;
    ic.method = IntegratorMethod::rk4_fixed;
    ic.step = cfg.stage_tau / 50.0;
    ic.t_start = 0.0;
    ic.t_stop = 20.0 * cfg.stage_tau;
    auto trace = integrate(model, ic, {0.2, 0.2, 0.2});
    for (std::size_t s = 0; s < trace.sample_count(); ++s) {
        CHECK(trace.columns[0][s] == doctest::Approx(trace.columns[1][s]).epsilon(1e-10));
        CHECK(trace.columns[1][s] == doctest::Approx(trace.columns[2][s]).epsilon(1e-10));
    }
}

TEST_CASE("switch events appear in the model") {
    TwoTankLatchConfig cfg;
    cfg.sw.schedule = {{1e-6, 1e-7}};
    auto model = build_two_tank(cfg);
    REQUIRE(model.events.size() == 2);
    CHECK(model.events[0].first == 1e-6);
    CHECK(model.events[1].first == doctest::Approx(1.1e-6));
}
