#include "doctest.h"

#include "coalhaus/population.hpp"
#include "coalhaus/regime.hpp"
#include "coalhaus/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using namespace coalhaus;

namespace {

/** Three-piece step path: n = 3.0 on [0,1), 3.6 on [1,2), 2.4 on [2,3]. */
TrajectorySummary step_trajectory() {
    TrajectorySummary traj;
    traj.horizon = 3.0;
    traj.r_K = 1.0;
    traj.s_K = 10.0;
    traj.size_path.times_model = {0.0, 1.0, 2.0};
    traj.size_path.sizes = {30, 36, 24};
    traj.size_path.end_time_model = 3.0;
    return traj;
}

} // namespace

TEST_CASE("first threshold passage on a handcrafted path") {
    const auto traj = step_trajectory();
    const auto band = tau_K(traj, ThresholdSpec::band(3.0, 0.5));
    REQUIRE(band.has_value());
    CHECK(*band == doctest::Approx(1.0)); // n jumps to 3.6

    const auto barrier = tau_K(traj, ThresholdSpec::lower_barrier(2.5));
    REQUIRE(barrier.has_value());
    CHECK(*barrier == doctest::Approx(2.0)); // n drops to 2.4

    CHECK_FALSE(tau_K(traj, ThresholdSpec::band(3.0, 1.0)).has_value());
    CHECK_FALSE(tau_K(traj, ThresholdSpec::lower_barrier(2.0)).has_value());
}

TEST_CASE("occupation measure on a handcrafted path") {
    const auto traj = step_trajectory();
    const std::vector<double> edges = {2.5, 3.5};

    const auto occ = occupation_measure(traj, edges, std::nullopt);
    REQUIRE(occ.masses.size() == 1);
    CHECK(occ.masses[0] == doctest::Approx(1.0)); // [0,1) at n = 3.0
    CHECK(occ.above == doctest::Approx(1.0));     // [1,2) at n = 3.6
    CHECK(occ.below == doctest::Approx(1.0));     // [2,3) at n = 2.4
    CHECK(occ.total == doctest::Approx(3.0));
    CHECK(occ.fraction_in(2.5, 3.5) == doctest::Approx(1.0 / 3.0));

    // Stopped at the lower barrier: only [0,2) is counted.
    const auto stopped =
        occupation_measure(traj, edges, ThresholdSpec::lower_barrier(2.5));
    CHECK(stopped.total == doctest::Approx(2.0));
    CHECK(stopped.masses[0] == doctest::Approx(1.0));
    CHECK(stopped.above == doctest::Approx(1.0));
    CHECK(stopped.below == doctest::Approx(0.0));
}

TEST_CASE("lyapunov function values") {
    // V(3.5; 3, 0.5) = 1 - 1 - log(3.5/2.5) = -log(1.4).
    CHECK(lyapunov_V(3.5, 3.0, 0.5) ==
          doctest::Approx(-std::log(1.4)).epsilon(1e-13));
    // V(2.5; 3, 0.5) = 2.5/3.5 - 1 - log(1) = -2/7.
    CHECK(lyapunov_V(2.5, 3.0, 0.5) ==
          doctest::Approx(-2.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("initial populations") {
    const auto d = initial_distinct(4);
    CHECK(d == std::vector<std::uint32_t>{1, 2, 3, 4});

    Rng rng(stream_seed(5, 0));
    const auto iid = initial_iid(1000, 3, rng);
    REQUIRE(iid.size() == 1000);
    for (auto t : iid) {
        CHECK(t >= 1);
        CHECK(t <= 3);
    }
}

TEST_CASE("first event time has the predicted total rate") {
    // N = 10, b = 2, d = 1, c = 1, K = 10: total rate bN + N(d + cN/K) = 40,
    // so the first event time is Exponential(40) in model units.
    RegimeConfig cfg;
    cfg.b = 2.0;
    cfg.d = 1.0;
    cfg.c = 1.0;
    cfg.K = 10.0;
    cfg.law = OffspringLaw::geometric(0.5);
    PopulationOptions opt;
    opt.record_size_path = true;

    const int reps = 2000;
    double sum = 0.0;
    for (int r = 0; r < reps; ++r) {
        Rng rng(stream_seed(301, static_cast<std::uint64_t>(r)));
        const auto traj =
            simulate_population(cfg, initial_distinct(10), 0.05, opt, rng);
        REQUIRE(traj.size_path.times_model.size() >= 2);
        sum += traj.size_path.times_model[1];
    }
    const double mean = sum / reps;
    const double se = (1.0 / 40.0) / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(mean - 1.0 / 40.0) < 4.0 * se);
}

TEST_CASE("size bookkeeping and grid conventions") {
    RegimeConfig cfg;
    cfg.b = 2.0;
    cfg.d = 1.0;
    cfg.c = 1.0;
    cfg.K = 30.0;
    cfg.law = OffspringLaw::geometric(0.5);

    PopulationOptions opt;
    opt.grid = {0.0, 0.5, 1.0};
    opt.record_frequencies = true;
    opt.record_size_path = true;

    Rng rng(stream_seed(302, 0));
    const std::int64_t n0 = cfg.initial_size();
    const auto traj = simulate_population(cfg, initial_distinct(n0), 1.0, opt, rng);

    // Grid time 0 reports the initial state.
    REQUIRE(traj.n_values.size() == 3);
    CHECK(traj.n_values[0] ==
          doctest::Approx(static_cast<double>(n0) / cfg.s_K()));

    // Conservation: every birth adds offspring, every death removes one.
    CHECK(traj.final_size ==
          n0 + static_cast<std::int64_t>(traj.offspring_total) -
              static_cast<std::int64_t>(traj.deaths));
    CHECK(traj.offspring_total >= traj.births);

    // Size path is event-exact: times strictly increasing, sizes change at
    // every event, values match the grid readings.
    const auto& sp = traj.size_path;
    REQUIRE_FALSE(sp.times_model.empty());
    CHECK(sp.times_model.front() == doctest::Approx(0.0));
    for (std::size_t i = 1; i < sp.times_model.size(); ++i) {
        CHECK(sp.times_model[i] > sp.times_model[i - 1]);
        CHECK(sp.sizes[i] != sp.sizes[i - 1]);
    }
    CHECK(sp.sizes.back() == traj.final_size);

    // Frequencies: sorted types, masses sum to one while alive.
    REQUIRE(traj.frequencies.size() == 3);
    for (const auto& snap : traj.frequencies) {
        double mass = 0.0;
        std::uint32_t prev_type = 0;
        for (const auto& [type, freq] : snap) {
            CHECK(type > prev_type);
            prev_type = type;
            mass += freq;
        }
        CHECK(mass == doctest::Approx(1.0));
    }

    // Final counts sum to the final size.
    std::int64_t count_sum = 0;
    for (const auto& [type, count] : traj.final_counts) count_sum += count;
    CHECK(count_sum == traj.final_size);
}

TEST_CASE("extinction is absorbing and reported with the reserved type") {
    // Strong crowding (c/K = 50) drives a two-individual population extinct
    // almost immediately.
    RegimeConfig cfg;
    cfg.b = 1.0;
    cfg.d = 0.0;
    cfg.c = 50.0;
    cfg.K = 1.0;
    cfg.law = OffspringLaw::explicit_finite({1.0});

    PopulationOptions opt;
    opt.grid = {5.0};
    opt.record_frequencies = true;

    int extinct_count = 0;
    for (int r = 0; r < 20; ++r) {
        Rng rng(stream_seed(303, static_cast<std::uint64_t>(r)));
        const auto traj = simulate_population(cfg, {1, 1}, 5.0, opt, rng);
        if (!traj.extinct) continue;
        ++extinct_count;
        CHECK(traj.extinction_time <= 5.0);
        CHECK(traj.final_size == 0);
        CHECK(traj.n_values[0] == doctest::Approx(0.0));
        REQUIRE(traj.frequencies[0].size() == 1);
        CHECK(traj.frequencies[0][0].first == kExtinctType);
        CHECK(traj.frequencies[0][0].second == doctest::Approx(1.0));
        CHECK(traj.size_path.sizes.back() == 0);
    }
    CHECK(extinct_count >= 15);
}

TEST_CASE("same seed reproduces the same trajectory") {
    RegimeConfig cfg;
    cfg.b = 2.0;
    cfg.d = 1.0;
    cfg.c = 1.0;
    cfg.K = 25.0;
    cfg.law = OffspringLaw::geometric(0.5);
    PopulationOptions opt;
    opt.grid = {0.25, 0.5};
    opt.record_frequencies = true;

    Rng a(stream_seed(304, 7));
    Rng b(stream_seed(304, 7));
    const auto ta = simulate_population(cfg, initial_distinct(75), 0.5, opt, a);
    const auto tb = simulate_population(cfg, initial_distinct(75), 0.5, opt, b);
    CHECK(ta.n_values == tb.n_values);
    CHECK(ta.size_path.times_model == tb.size_path.times_model);
    CHECK(ta.size_path.sizes == tb.size_path.sizes);
    CHECK(ta.frequencies == tb.frequencies);
    CHECK(ta.final_counts == tb.final_counts);
    CHECK(ta.births == tb.births);
    CHECK(ta.deaths == tb.deaths);
}
