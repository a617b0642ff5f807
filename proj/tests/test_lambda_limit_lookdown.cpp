#include "doctest.h"

#include "coalhaus/coalescent.hpp"
#include "coalhaus/lambda_measure.hpp"
#include "coalhaus/limit_lookdown.hpp"
#include "coalhaus/numeric.hpp"
#include "coalhaus/rng.hpp"
#include "coalhaus/stats.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace coalhaus;

TEST_CASE("total mass of the canonical measures") {
    CHECK(LambdaMeasure::kingman(0.5).total_mass() == doctest::Approx(0.5));
    CHECK(LambdaMeasure::uniform_scaled(3.0).total_mass() ==
          doctest::Approx(3.0).epsilon(1e-12));
    // 2 * B(2 - alpha, alpha) = 2 * B(0.5, 1.5) = pi.
    CHECK(LambdaMeasure::beta_paper(1.5, 2.0).total_mass() ==
          doctest::Approx(std::acos(-1.0)).epsilon(1e-12));
}

TEST_CASE("density evaluation") {
    const auto beta = LambdaMeasure::beta_paper(1.5, 1.0);
    CHECK(beta.density(0.25) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(beta.density(0.5) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(LambdaMeasure::uniform_scaled(2.5).density(0.7) == doctest::Approx(2.5));
    CHECK(LambdaMeasure::kingman(1.0).density(0.5) == doctest::Approx(0.0));
}

TEST_CASE("with_atom adds only to pairwise merge rates") {
    const auto base = LambdaMeasure::uniform_scaled(1.0);
    const auto mixed = base.with_atom(0.25);
    CHECK(mixed.atom() == doctest::Approx(0.25));
    CHECK(mixed.total_mass() == doctest::Approx(base.total_mass() + 0.25).epsilon(1e-12));
    for (int j = 2; j <= 5; ++j) {
        // The collision integral is the density part alone; the atom shows
        // up in the full merge rate, and only for pairs.
        CHECK(mixed.collision_integral(5, j) ==
              doctest::Approx(base.collision_integral(5, j)).epsilon(1e-12));
        const double expected = merge_rate(base, 5, j) + (j == 2 ? 0.25 : 0.0);
        CHECK(merge_rate(mixed, 5, j) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("general density quadrature matches the closed forms") {
    const double alpha = 1.7;
    const auto closed = LambdaMeasure::beta_paper(alpha, 1.0);
    const auto quad = LambdaMeasure::general([alpha](double u) {
        return std::pow(1.0 - u, alpha - 1.0) * std::pow(u, 1.0 - alpha);
    });
    for (int n : {2, 5, 9}) {
        for (int j = 2; j <= n; ++j) {
            CHECK(quad.collision_integral(n, j) ==
                  doctest::Approx(closed.collision_integral(n, j)).epsilon(1e-8));
        }
    }
    CHECK(quad.total_mass() == doctest::Approx(closed.total_mass()).epsilon(1e-8));

    const auto flat = LambdaMeasure::general([](double) { return 1.0; });
    CHECK(flat.collision_integral(6, 3) ==
          doctest::Approx(LambdaMeasure::uniform_scaled(1.0).collision_integral(6, 3))
              .epsilon(1e-9));
}

TEST_CASE("restricted event rates") {
    // Uniform Lambda0, k = 3: lambda_tilde is 1/2 for both subset sizes, so
    // the total over the 4 subsets is 2.
    const auto bs = LambdaMeasure::uniform_scaled(1.0);
    const auto rates = restricted_event_rates(bs, 3);
    CHECK(rates.k == 3);
    CHECK(rates.subset_rate(2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rates.subset_rate(3) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rates.total_rate() == doctest::Approx(2.0).epsilon(1e-12));

    // k = 2: the single pair J = {1,2} fires at the full mass.
    const auto pair = restricted_event_rates(bs, 2);
    CHECK(pair.subset_rate(2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.total_rate() == doctest::Approx(1.0).epsilon(1e-12));

    // Pure atom: only pairs fire, each at the atom's rate.
    const auto king = restricted_event_rates(LambdaMeasure::kingman(0.5), 4);
    CHECK(king.subset_rate(2) == doctest::Approx(0.5));
    CHECK(king.subset_rate(3) == doctest::Approx(0.0));
    CHECK(king.subset_rate(4) == doctest::Approx(0.0));
    CHECK(king.total_rate() == doctest::Approx(6.0 * 0.5));
}

TEST_CASE("limit lookdown reproduction rule") {
    // J = {1,3} on (x,y,z): level 1 keeps x, level 3 receives a copy of x,
    // z is displaced past the window.
    const auto bs = LambdaMeasure::uniform_scaled(1.0);
    Rng rng(stream_seed(11, 0));
    for (int attempt = 0; attempt < 2000; ++attempt) {
        const auto run = simulate_limit_lookdown(bs, 3, {10, 20, 30}, 0.5, rng);
        REQUIRE(run.type_path.size() == run.events.size() + 1);
        CHECK(run.type_path.front() == std::vector<std::uint32_t>{10, 20, 30});
        if (run.events.empty()) continue;
        const auto& J = run.events.front().levels;
        REQUIRE(J.size() >= 2);
        CHECK(std::is_sorted(J.begin(), J.end()));
        CHECK(J.front() >= 1);
        CHECK(J.back() <= 3);
        if (J == std::vector<int>{1, 3}) {
            CHECK(run.type_path[1] == std::vector<std::uint32_t>{10, 20, 10});
            return;
        }
    }
    FAIL("no event with J = {1,3} observed");
}

TEST_CASE("limit lookdown event levels stay inside the window") {
    const auto beta = LambdaMeasure::beta_paper(1.5, 1.0);
    Rng rng(stream_seed(12, 0));
    const auto run = simulate_limit_lookdown(beta, 4, {1, 2, 3, 4}, 20.0, rng);
    double prev = 0.0;
    for (const auto& ev : run.events) {
        CHECK(ev.t > prev);
        CHECK(ev.t <= run.horizon);
        prev = ev.t;
        REQUIRE(ev.levels.size() >= 2);
        CHECK(ev.levels.size() <= 4);
        CHECK(std::is_sorted(ev.levels.begin(), ev.levels.end()));
        CHECK(ev.levels.front() >= 1);
        CHECK(ev.levels.back() <= 4);
    }
}

TEST_CASE("event counts are Poisson at the total restricted rate") {
    const auto bs = LambdaMeasure::uniform_scaled(1.0);
    const double total = restricted_event_rates(bs, 3).total_rate();
    const double horizon = 5000.0; // about 10^4 events
    Rng rng(stream_seed(13, 0));
    const auto run = simulate_limit_lookdown(bs, 3, {1, 2, 3}, horizon, rng);
    const double z = poisson_rate_test(static_cast<std::int64_t>(run.events.size()),
                                       horizon, total);
    CHECK(std::abs(z) < 4.0);
}

TEST_CASE("measure construction validates its inputs") {
    CHECK_THROWS_AS(LambdaMeasure::kingman(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(LambdaMeasure::beta_paper(2.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(LambdaMeasure::beta_paper(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(LambdaMeasure::uniform_scaled(-0.5), std::invalid_argument);
}
