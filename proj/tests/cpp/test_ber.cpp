#include <doctest.h>

#include <cmath>

#include "shilsim/ber.hpp"

using namespace shilsim;

namespace {
NoiseScenario make(Encoding enc, double n_over_s, std::uint64_t trials = 200000,
                   std::uint64_t seed = 42) {
    NoiseScenario sc;
    sc.signal = 1.0;
    sc.noise = n_over_s;
    sc.encoding = enc;
    sc.trials = trials;
    sc.seed = seed;
    return sc;
}
} // namespace

TEST_CASE("analytic worked values") {
    CHECK(analytic_ber(make(Encoding::level, 2.0)) == 0.5);
    CHECK(analytic_ber(make(Encoding::level, 0.5)) == 0.0);
    CHECK(analytic_ber(make(Encoding::level, 1.0)) == 0.25);
    CHECK(analytic_ber(make(Encoding::phase, 0.5)) == 0.0);
    CHECK(analytic_ber(make(Encoding::phase, 1.0)) == 0.0);
    CHECK(analytic_ber(make(Encoding::phase, 2.0)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("analytic phase curve is continuous and increasing toward one half") {
    double prev = analytic_ber(make(Encoding::phase, 1.0));
    CHECK(prev == 0.0);
    CHECK(analytic_ber(make(Encoding::phase, 1.0 + 1e-12)) < 1e-5);
    for (double r = 1.1; r < 300.0; r *= 1.7) {
        const double p = analytic_ber(make(Encoding::phase, r));
        CHECK(p > prev);
        CHECK(p < 0.5);
        prev = p;
    }
    CHECK(analytic_ber(make(Encoding::phase, 1e9)) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("monte carlo matches the analytic value within four sigma") {
    for (auto enc : {Encoding::level, Encoding::phase}) {
        for (double r : {0.5, 1.5, 2.0, 10.0}) {
            const auto res = monte_carlo_ber(make(enc, r));
            const double sigma = std::sqrt(std::max(res.analytic * (1.0 - res.analytic), 1e-12) /
                                           static_cast<double>(res.trials));
            CHECK(std::abs(res.empirical - res.analytic) <= 4.0 * sigma + 1e-12);
        }
    }
}

TEST_CASE("no noise means no errors") {
    for (auto enc : {Encoding::level, Encoding::phase}) {
        const auto res = monte_carlo_ber(make(enc, 0.0, 10000));
        CHECK(res.errors == 0);
    }
}

TEST_CASE("fixed seeds reproduce bit-identical results") {
    const auto a = monte_carlo_ber(make(Encoding::phase, 2.0, 100000, 7));
    const auto b = monte_carlo_ber(make(Encoding::phase, 2.0, 100000, 7));
    CHECK(a.errors == b.errors);
    CHECK(a.empirical == b.empirical);
    const auto c = monte_carlo_ber(make(Encoding::phase, 2.0, 100000, 8));
    CHECK(a.errors != c.errors);  // different stream
}

TEST_CASE("sweep is reproducible and phase beats level above threshold") {
    const std::vector<double> grid{0.5, 1.5, 2.0, 10.0};
    const auto rows = ber_sweep({Encoding::level, Encoding::phase}, grid, 50000, 3);
    const auto again = ber_sweep({Encoding::level, Encoding::phase}, grid, 50000, 3);
    REQUIRE(rows.size() == again.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].result.errors == again[i].result.errors);
    }
    // analytic columns nondecreasing in the ratio; phase strictly below level for n > s
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& level = rows[i];
        const auto& phase = rows[grid.size() + i];
        REQUIRE(level.encoding == Encoding::level);
        REQUIRE(phase.encoding == Encoding::phase);
        if (grid[i] > 1.0) {
            CHECK(phase.result.analytic < level.result.analytic);
            CHECK(level.result.analytic == 0.5);
        } else {
            CHECK(phase.result.analytic == 0.0);
            CHECK(level.result.analytic == 0.0);
        }
        if (i > 0) {
            CHECK(rows[i].result.analytic >= rows[i - 1].result.analytic);
            CHECK(rows[grid.size() + i].result.analytic >=
                  rows[grid.size() + i - 1].result.analytic);
        }
    }
    CHECK_THROWS_AS(ber_sweep({Encoding::level}, {}, 100, 0), ConfigInvalid);
}
