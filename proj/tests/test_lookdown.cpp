#include "doctest.h"

#include "coalhaus/lookdown.hpp"
#include "coalhaus/population.hpp"
#include "coalhaus/regime.hpp"
#include "coalhaus/rng.hpp"
#include "coalhaus/stats.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace coalhaus;

namespace {

std::uint32_t identity_rule(std::int64_t level) {
    return static_cast<std::uint32_t>(level);
}

std::vector<std::uint32_t> living(const LookdownState& st) {
    std::vector<std::uint32_t> out;
    for (std::int64_t l = 1; l <= st.alive(); ++l) out.push_back(st.type_at(l));
    return out;
}

} // namespace

TEST_CASE("birth rule on worked examples") {
    LookdownState st({1, 2, 3}, identity_rule);
    CHECK(st.alive() == 3);

    // J = {1,2}: parent at level 1, copy inserted at level 2.
    st.step_birth({1, 2});
    CHECK(st.alive() == 4);
    CHECK(living(st) == std::vector<std::uint32_t>{1, 1, 2, 3});

    // From (1,2,3) again: J = {2,3,5}, ell = 2; parent at level 2 keeps its
    // level, copies land at 3 and 5, old levels 1 and 3 re-index to 1 and 4.
    LookdownState st2({1, 2, 3}, identity_rule);
    st2.step_birth({2, 3, 5});
    CHECK(st2.alive() == 5);
    CHECK(living(st2) == std::vector<std::uint32_t>{1, 2, 2, 3, 2});
}

TEST_CASE("death freezes the vacated coordinate") {
    LookdownState st({1, 2, 3}, identity_rule);
    st.step_birth({2, 3, 5}); // (1,2,2,3,2)
    st.step_death();
    CHECK(st.alive() == 4);
    CHECK(living(st) == std::vector<std::uint32_t>{1, 2, 2, 3});
    // Level 5 reads the type it held when last alive, not the extension rule.
    CHECK(st.extended_type(5) == 2);

    // A level never touched reads its extension-rule type.
    CHECK(st.extended_type(9) == 9);

    LookdownState tiny({7}, identity_rule);
    tiny.step_death();
    CHECK(tiny.alive() == 0);
    CHECK_THROWS_AS(tiny.step_death(), std::invalid_argument);
}

TEST_CASE("birth validation") {
    LookdownState st({1, 2, 3}, identity_rule);
    CHECK_THROWS_AS(st.step_birth({2}), std::invalid_argument);        // |J| < 2
    CHECK_THROWS_AS(st.step_birth({2, 1}), std::invalid_argument);     // unsorted
    CHECK_THROWS_AS(st.step_birth({2, 2}), std::invalid_argument);     // duplicate
    CHECK_THROWS_AS(st.step_birth({1, 6}), std::invalid_argument);     // beyond N+ell
    CHECK_THROWS_AS(st.step_birth({0, 2}), std::invalid_argument);     // below 1
    CHECK(st.alive() == 3); // state untouched by rejected updates
}

TEST_CASE("empirical measure is sorted and label-order invariant") {
    LookdownState a({1, 2, 2, 3}, identity_rule);
    const auto ma = a.empirical_measure();
    REQUIRE(ma.size() == 3);
    CHECK(ma[0] == std::pair<std::uint32_t, std::int64_t>{1, 1});
    CHECK(ma[1] == std::pair<std::uint32_t, std::int64_t>{2, 2});
    CHECK(ma[2] == std::pair<std::uint32_t, std::int64_t>{3, 1});

    LookdownState b({2, 3, 1, 2}, identity_rule);
    CHECK(b.empirical_measure() == ma);
}

TEST_CASE("restricted birth window update") {
    // Full window, insertions at 2 and 4, parent at 1: old types 6,7 shift to
    // the free slots, 8 is pushed out.
    std::vector<std::uint32_t> w = {5, 6, 7, 8};
    apply_restricted_birth(w, 4, 2, 1, {2, 4});
    CHECK(w == std::vector<std::uint32_t>{5, 5, 6, 5});

    // Parent above level 1 keeps its level.
    w = {11, 12, 13, 14};
    apply_restricted_birth(w, 4, 1, 2, {3});
    CHECK(w == std::vector<std::uint32_t>{11, 12, 12, 13});

    // Short window: positions above the post-birth living count stay frozen.
    w = {9, 10, 30, 40};
    apply_restricted_birth(w, 2, 1, 1, {2});
    CHECK(w == std::vector<std::uint32_t>{9, 9, 10, 40});

    // Offspring landing above the window leave it unchanged beyond the shift.
    w = {1, 2, 3};
    apply_restricted_birth(w, 3, 3, 1, {2});
    CHECK(w == std::vector<std::uint32_t>{1, 1, 2});
}

TEST_CASE("uniform subset sampler hits all pairs uniformly") {
    const std::int64_t n = 6, m = 2;
    const int draws = 1000000;
    Rng rng(stream_seed(401, 0));
    std::vector<std::int64_t> counts(15, 0);
    bool well_formed = true;
    for (int i = 0; i < draws; ++i) {
        const auto J = sample_subset(n, m, rng);
        well_formed &= J.size() == 2 && J[0] >= 1 && J[1] <= n && J[0] < J[1];
        if (!well_formed) break;
        // Rank of the pair {a,b} among the C(6,2) = 15 sorted pairs.
        const std::int64_t a = J[0], b = J[1];
        const std::int64_t idx = (a - 1) * n - a * (a - 1) / 2 + (b - a - 1);
        counts[static_cast<std::size_t>(idx)]++;
    }
    REQUIRE(well_formed);
    const std::vector<double> probs(15, 1.0 / 15.0);
    CHECK(chi_square_gof(counts, probs) < chi_square_threshold(14, 1e-3));

    // m = n returns the whole set.
    const auto full = sample_subset(4, 4, rng);
    CHECK(full == std::vector<std::int64_t>{1, 2, 3, 4});
}

TEST_CASE("oracle lookdown run bookkeeping") {
    RegimeConfig cfg;
    cfg.b = 2.0;
    cfg.d = 1.0;
    cfg.c = 1.0;
    cfg.K = 10.0;
    cfg.law = OffspringLaw::geometric(0.5);

    LookdownOptions opt;
    opt.k = 2;
    opt.mode = LookdownMode::Oracle;
    opt.snapshot_times = {0.0, 0.25};
    opt.log_events = true;

    Rng rng(stream_seed(402, 0));
    const auto initial = initial_distinct(cfg.initial_size());
    const auto run = simulate_lookdown(cfg, initial, 0.5, opt, rng);

    CHECK(run.initial_size == 30);
    CHECK(run.mode == LookdownMode::Oracle);
    CHECK(run.r_K == doctest::Approx(10.0));

    // Oracle mode logs every event.
    CHECK(run.events.size() == run.births + run.deaths);
    CHECK(run.final_alive ==
          run.initial_size + static_cast<std::int64_t>(run.offspring_total) -
              static_cast<std::int64_t>(run.deaths));
    CHECK(run.min_alive <= run.initial_size);
    CHECK(run.degenerate == (run.min_alive < opt.k));

    double prev = -1.0;
    for (const auto& ev : run.events) {
        CHECK(ev.t_model > prev);
        prev = ev.t_model;
        if (ev.is_birth) {
            REQUIRE(ev.levels.size() >= 2);
            CHECK(std::is_sorted(ev.levels.begin(), ev.levels.end()));
            CHECK(ev.levels.front() >= 1);
        } else {
            REQUIRE(ev.levels.size() == 1);
        }
    }
    CHECK(prev <= 0.5 * run.r_K); // model-time horizon

    // Snapshot at time zero reports the initial vector.
    REQUIRE(run.snapshots.size() == 2);
    CHECK(run.snapshots[0].t == doctest::Approx(0.0));
    CHECK(run.snapshots[0].alive == 30);
    CHECK(run.snapshots[0].types == initial);
    CHECK(run.snapshots[1].alive ==
          static_cast<std::int64_t>(run.snapshots[1].types.size()));
}

TEST_CASE("scalable lookdown logs only low-window births") {
    RegimeConfig cfg;
    cfg.b = 2.0;
    cfg.d = 1.0;
    cfg.c = 1.0;
    cfg.K = 20.0;
    cfg.law = OffspringLaw::geometric(0.5);

    LookdownOptions opt;
    opt.k = 3;
    opt.mode = LookdownMode::Scalable;
    opt.snapshot_times = {0.5};
    opt.log_events = true;

    Rng rng(stream_seed(403, 1));
    const auto run = simulate_lookdown(cfg, initial_distinct(cfg.initial_size()),
                                       0.5, opt, rng);

    CHECK_FALSE(run.degenerate);
    for (const auto& ev : run.events) {
        CHECK(ev.is_birth);
        REQUIRE(ev.levels.size() >= 2);
        CHECK(ev.levels.size() <= 3);
        CHECK(std::is_sorted(ev.levels.begin(), ev.levels.end()));
        CHECK(ev.levels.front() >= 1);
        CHECK(ev.levels.back() <= 3);
    }
    // The window never exceeds k entries.
    REQUIRE(run.snapshots.size() == 1);
    CHECK(run.snapshots[0].types.size() <= 3);
    CHECK(run.final_window.size() <= 3);
}

TEST_CASE("degenerate flag tracks the minimum population") {
    // K = 2 keeps the population around 6 individuals, so dipping below
    // k = 4 is a matter of time: a short horizon leaves most replicates
    // clean, a long one degrades nearly all of them.
    RegimeConfig cfg;
    cfg.b = 2.0;
    cfg.d = 1.0;
    cfg.c = 1.0;
    cfg.K = 2.0;
    cfg.law = OffspringLaw::geometric(0.5);

    LookdownOptions opt;
    opt.k = 4;
    opt.mode = LookdownMode::Oracle;
    opt.log_events = false;

    int degenerate = 0, clean = 0;
    for (std::uint64_t r = 0; r < 30; ++r) {
        Rng rng(stream_seed(404, r));
        const auto run = simulate_lookdown(cfg, initial_distinct(6), 0.025, opt, rng);
        CHECK(run.degenerate == (run.min_alive < opt.k));
        run.degenerate ? ++degenerate : ++clean;
    }
    CHECK(clean > 0);

    for (std::uint64_t r = 0; r < 30; ++r) {
        Rng rng(stream_seed(405, r));
        const auto run = simulate_lookdown(cfg, initial_distinct(6), 2.5, opt, rng);
        CHECK(run.degenerate == (run.min_alive < opt.k));
        run.degenerate ? ++degenerate : ++clean;
    }
    CHECK(degenerate > 0);
}

TEST_CASE("same seed reproduces the same lookdown run") {
    RegimeConfig cfg;
    cfg.b = 2.0;
    cfg.d = 1.0;
    cfg.c = 1.0;
    cfg.K = 15.0;
    cfg.law = OffspringLaw::geometric(0.5);

    LookdownOptions opt;
    opt.k = 2;
    opt.mode = LookdownMode::Scalable;
    opt.log_events = true;

    Rng a(stream_seed(405, 2));
    Rng b(stream_seed(405, 2));
    const auto ra = simulate_lookdown(cfg, initial_distinct(45), 0.4, opt, a);
    const auto rb = simulate_lookdown(cfg, initial_distinct(45), 0.4, opt, b);
    CHECK(ra.events.size() == rb.events.size());
    for (std::size_t i = 0; i < ra.events.size(); ++i) {
        CHECK(ra.events[i].t_model == rb.events[i].t_model);
        CHECK(ra.events[i].levels == rb.events[i].levels);
    }
    CHECK(ra.final_window == rb.final_window);
    CHECK(ra.final_alive == rb.final_alive);
}
