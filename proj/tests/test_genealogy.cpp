#include "doctest.h"

#include "coalhaus/genealogy.hpp"
#include "coalhaus/lookdown.hpp"
#include "coalhaus/partition.hpp"
#include "coalhaus/population.hpp"
#include "coalhaus/regime.hpp"
#include "coalhaus/rng.hpp"

#include <stdexcept>
#include <vector>

using namespace coalhaus;

TEST_CASE("backward level map") {
    // Levels {1,3}, event J = {1,2}: 1 is min J and stays, 3 shifts down by
    // the one inserted level below it.
    CHECK(backward_levels({1, 3}, {1, 2}) == std::vector<int>{1, 2});
    // Both levels in J collapse onto min J.
    CHECK(backward_levels({1, 2}, {1, 2}) == std::vector<int>{1});
    // Insertion above a level leaves it alone.
    CHECK(backward_levels({2, 4}, {1, 3}) == std::vector<int>{2, 3});
    // Triple event absorbing two of three lineages.
    CHECK(backward_levels({1, 2, 4}, {2, 3, 4}) == std::vector<int>{1, 2});
}

TEST_CASE("counting path restriction from an oracle log") {
    LookdownRun run;
    run.initial_size = 30;
    run.k = 3;
    run.mode = LookdownMode::Oracle;
    run.horizon = 1.0;
    run.r_K = 2.0;
    run.events.push_back({0.4, true, {1, 2, 5}});  // restricts to {1,2}
    run.events.push_back({0.7, false, {31}});      // death, dropped
    run.events.push_back({1.2, true, {2, 7, 9}});  // singleton overlap, dropped
    run.events.push_back({1.6, true, {1, 3}});     // kept as-is

    const auto path = counting_path_from_lookdown(run);
    CHECK(path.k == 3);
    CHECK(path.horizon == doctest::Approx(1.0));
    REQUIRE(path.events.size() == 2);
    CHECK(path.events[0].t == doctest::Approx(0.2)); // model time / r_K
    CHECK(path.events[0].levels == std::vector<int>{1, 2});
    CHECK(path.events[1].t == doctest::Approx(0.8));
    CHECK(path.events[1].levels == std::vector<int>{1, 3});
    path.validate();
}

TEST_CASE("counting path validation") {
    CountingPath path;
    path.k = 3;
    path.horizon = 1.0;
    path.events.push_back({0.2, {1, 2}});
    path.validate();

    auto dup = path;
    dup.events.push_back({0.2, {1, 3}});
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    auto bad_levels = path;
    bad_levels.events[0].levels = {2, 1};
    CHECK_THROWS_AS(bad_levels.validate(), std::invalid_argument);

    auto out_of_range = path;
    out_of_range.events[0].levels = {1, 4};
    CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);

    auto singleton = path;
    singleton.events[0].levels = {2};
    CHECK_THROWS_AS(singleton.validate(), std::invalid_argument);
}

TEST_CASE("psi on a two-event path, hand-traced") {
    CountingPath path;
    path.k = 3;
    path.horizon = 1.0;
    path.events.push_back({0.2, {1, 2}});
    path.events.push_back({0.8, {1, 3}});

    const auto pp = psi(path);
    pp.validate();
    CHECK(pp.horizon == doctest::Approx(1.0));
    CHECK(pp.initial == Partition::all_singletons(3));
    REQUIRE(pp.steps.size() == 2);

    // Backward time runs from the sampling instant: the forward event at
    // t = 0.8 is the first backward step, at 1.0 - 0.8 = 0.2.
    CHECK(pp.steps[0].time == doctest::Approx(0.2));
    CHECK(pp.steps[0].merged_blocks == std::vector<int>{0, 2});
    CHECK(pp.steps[0].after.to_string() == "1,3|2");

    CHECK(pp.steps[1].time == doctest::Approx(0.8));
    CHECK(pp.steps[1].merged_blocks == std::vector<int>{0, 1});
    CHECK(pp.steps[1].after.num_blocks() == 1);

    CHECK(pp.merger_sizes() == std::vector<int>{2, 2});
}

TEST_CASE("psi of an empty path is constant all-singletons") {
    CountingPath path;
    path.k = 4;
    path.horizon = 2.5;
    const auto pp = psi(path);
    CHECK(pp.steps.empty());
    CHECK(pp.initial == Partition::all_singletons(4));
    CHECK(pp.at(2.5) == pp.initial);
}

TEST_CASE("oracle tracing equals psi of the restricted log") {
    // Small populations make low-level births frequent, exercising the map
    // heavily; replicates that dip below k are skipped (tracing refuses them).
    RegimeConfig cfg;
    cfg.b = 2.0;
    cfg.d = 1.0;
    cfg.c = 1.0;
    cfg.K = 3.0;
    cfg.law = OffspringLaw::geometric(0.5);

    LookdownOptions opt;
    opt.k = 2;
    opt.mode = LookdownMode::Oracle;
    opt.log_events = true;

    const double T = 0.4;
    int compared = 0, merged = 0;
    for (std::uint64_t r = 0; r < 200 && compared < 50; ++r) {
        Rng rng(stream_seed(501, r));
        const auto run = simulate_lookdown(cfg, initial_distinct(9), T, opt, rng);
        if (run.min_alive < opt.k) continue;
        ++compared;
        const auto traced = trace_ancestry_oracle(run, opt.k, T);
        const auto mapped = psi(counting_path_from_lookdown(run));
        CHECK(traced == mapped);
        if (!mapped.steps.empty()) ++merged;
    }
    CHECK(compared == 50);
    CHECK(merged > 0); // the comparison saw real coalescences
}

TEST_CASE("pair coalescence times") {
    PartitionPath merging;
    merging.horizon = 5.0;
    merging.initial = Partition::all_singletons(2);
    PartitionPath::Step s;
    s.time = 0.4;
    s.merged_blocks = {0, 1};
    s.after = Partition::parse("1,2");
    merging.steps.push_back(s);

    PartitionPath censored;
    censored.horizon = 5.0;
    censored.initial = Partition::all_singletons(2);

    const auto times = pair_coalescence_times({merging, censored});
    REQUIRE(times.size() == 2);
    CHECK(times[0].t == doctest::Approx(0.4));
    CHECK_FALSE(times[0].censored);
    CHECK(times[1].t == doctest::Approx(5.0));
    CHECK(times[1].censored);

    PartitionPath triple;
    triple.horizon = 1.0;
    triple.initial = Partition::all_singletons(3);
    CHECK_THROWS_AS(pair_coalescence_times({triple}), std::invalid_argument);
}

TEST_CASE("counting path from a limit run") {
    LimitRun run;
    run.k = 3;
    run.horizon = 2.0;
    run.initial_types = {1, 2, 3};
    run.events.push_back({0.5, {1, 2}});
    run.events.push_back({1.7, {1, 2, 3}});

    const auto path = counting_path_from_limit(run);
    CHECK(path.k == 3);
    CHECK(path.horizon == doctest::Approx(2.0));
    REQUIRE(path.events.size() == 2);
    CHECK(path.events[0].t == doctest::Approx(0.5)); // limit time is not rescaled
    CHECK(path.events[1].levels == std::vector<int>{1, 2, 3});
    path.validate();

    // A triple merger shows up as one three-block step under psi.
    const auto pp = psi(path);
    CHECK(pp.steps.front().time == doctest::Approx(0.3));
    CHECK(pp.steps.front().merged_blocks.size() == 3);
    CHECK(pp.merger_sizes() == std::vector<int>{3});
}
