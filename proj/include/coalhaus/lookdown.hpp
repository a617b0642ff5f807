#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "coalhaus/regime.hpp"
#include "coalhaus/rng.hpp"

namespace coalhaus {

/** Full lookdown state: a level-ordered vector of types with the E^infinity
 *  embedding. Levels 1..alive() are the living population; a level above
 *  alive() reads the type it held when last alive, or its initial type if it
 *  was never alive. The buffer therefore only ever appends, and a death is a
 *  decrement that freezes the top value in place.
 *
 *  A birth of size ell with index set J (an (ell+1)-subset of [N+ell]) makes
 *  the particle at the smallest index j1 = min J the parent, inserts copies
 *  of its type at the levels J \ {j1}, and re-indexes everyone else into
 *  [N+ell] \ (J \ {j1}) preserving order; the parent stays at level j1. */
class LookdownState {
  public:
    /** Levels 1..initial.size() start alive with the given types; levels
     *  beyond draw their initial type from extend_rule(level). */
    LookdownState(std::vector<std::uint32_t> initial,
                  std::function<std::uint32_t(std::int64_t)> extend_rule);

    std::int64_t alive() const { return alive_; }

    /** Type at a living level (1-based). */
    std::uint32_t type_at(std::int64_t level) const;

    /** Type of the extended coordinate at any level >= 1. */
    std::uint32_t extended_type(std::int64_t level) const;

    /** Applies B_J. J must be sorted, duplicate-free, inside [1, N + ell]
     *  with |J| = ell + 1 >= 2; otherwise throws. */
    void step_birth(const std::vector<std::int64_t>& J);

    /** Removes the highest living level; throws when nothing is alive. */
    void step_death();

    /** (type, count) pairs over living individuals, sorted by type. */
    std::vector<std::pair<std::uint32_t, std::int64_t>> empirical_measure() const;

    const std::vector<std::uint32_t>& buffer() const { return buffer_; }

  private:
    void ensure_buffer(std::int64_t upto);
    std::vector<std::uint32_t> buffer_;
    std::int64_t alive_ = 0;
    std::function<std::uint32_t(std::int64_t)> extend_rule_;
};

/** Lowest-k window update shared by the scalable prelimit simulator and the
 *  limiting lookdown: insert copies of the type at parent_level at the
 *  insertion levels (all <= window size), shift surviving types up in order,
 *  discard anything pushed above the window. living_before is the number of
 *  living levels before the birth; window positions above the post-birth
 *  living count keep their frozen values. */
void apply_restricted_birth(std::vector<std::uint32_t>& window,
                            std::int64_t living_before, std::int64_t ell,
                            int parent_level, const std::vector<int>& insertions);

enum class LookdownMode { Oracle, Scalable };

struct LookdownEvent {
    double t_model;
    bool is_birth;
    /** Birth: full J (oracle) or S = J intersect [k] (scalable), ascending.
     *  Death: one entry, the removed level. */
    std::vector<std::int64_t> levels;
};

struct LookdownSnapshot {
    double t; // rescaled
    std::int64_t alive;
    /** Full living vector (oracle) or lowest-k window (scalable). */
    std::vector<std::uint32_t> types;
};

struct LookdownRun {
    std::int64_t initial_size = 0;
    int k = 0;
    LookdownMode mode = LookdownMode::Scalable;
    double horizon = 0.0; // rescaled
    double r_K = 1.0;
    /** Oracle mode: every event with full index sets. Scalable mode: only
     *  births with |J intersect [k]| >= 2, which are the only events that can
     *  move the lowest-k types or genealogy. */
    std::vector<LookdownEvent> events;
    std::vector<LookdownSnapshot> snapshots;
    std::vector<std::uint32_t> final_window;
    std::int64_t final_alive = 0;
    std::int64_t min_alive = 0;
    /** Set when the population ever dropped below k; the lowest-k window and
     *  restricted log are unreliable past that point. */
    bool degenerate = false;
    std::uint64_t births = 0, deaths = 0, offspring_total = 0;
};

struct LookdownOptions {
    int k = 2;
    LookdownMode mode = LookdownMode::Scalable;
    std::vector<double> snapshot_times; // rescaled
    bool log_events = true;
};

/** Simulates the prelimit lookdown: total birth rate b N with offspring size
 *  from the law and J uniform among (ell+1)-subsets of [N+ell]; death rate
 *  N (d + c N / K) removing the top level. Horizon is in rescaled time. */
LookdownRun simulate_lookdown(const RegimeConfig& cfg,
                              const std::vector<std::uint32_t>& initial,
                              double horizon, const LookdownOptions& opt, Rng& rng);

} // namespace coalhaus
