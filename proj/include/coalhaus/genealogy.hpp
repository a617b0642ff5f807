#pragma once

#include <vector>

#include "coalhaus/limit_lookdown.hpp"
#include "coalhaus/lookdown.hpp"
#include "coalhaus/partition.hpp"

namespace coalhaus {

/** Restricted event record feeding the genealogy map: reproduction events
 *  that hit at least two of the lowest k levels, in rescaled time. */
struct CountingEvent {
    double t;                // rescaled, in [0, horizon]
    std::vector<int> levels; // J intersect [k], ascending, size >= 2
};

struct CountingPath {
    int k = 0;
    double horizon = 0.0; // rescaled sampling time; backward time 0
    std::vector<CountingEvent> events;

    /** Throws on non-increasing times, duplicate times, or level sets that
     *  are unsorted, out of [1, k], or smaller than two. */
    void validate() const;
};

/** Restricted view of a prelimit run. Oracle logs are cut down to
 *  J intersect [k]; scalable logs are already restricted. Death entries are
 *  dropped: they never move the lowest k levels while the population stays
 *  above k. Model times are rescaled by r_K. */
CountingPath counting_path_from_lookdown(const LookdownRun& run);

CountingPath counting_path_from_limit(const LimitRun& run);

/** One backward step of the ancestral level map for an event with level set
 *  J: a level in J jumps to min J, a level v not in J drops by the number of
 *  inserted levels (J minus its minimum) strictly below v. Input levels
 *  ascending; output sorted with collisions collapsed. */
std::vector<int> backward_levels(const std::vector<int>& levels,
                                 const std::vector<int>& J);

/** The ancestral partition process read backward from the sampling time:
 *  lineages start on levels 1..k at backward time 0 and the events are
 *  replayed in reverse. Lineages whose levels lie in an event's set merge
 *  into one block at min J; the others shift down, so the occupied levels
 *  stay exactly {1, ..., #blocks} throughout (asserted). Step times are
 *  horizon - t. */
PartitionPath psi(const CountingPath& path);

/** Exhaustive ancestry tracing over a full oracle log, replaying every
 *  event with its absolute level set (deaths included as no-ops). Agrees
 *  with psi of the restricted log path-for-path whenever the population
 *  stays at or above k; throws if it dipped below. */
PartitionPath trace_ancestry_oracle(const LookdownRun& run, int k, double T);

struct CensoredTime {
    double t = 0.0;
    bool censored = false;
};

/** First merger time per path, censored at the horizon. Paths must have
 *  exactly two elements. */
std::vector<CensoredTime> pair_coalescence_times(const std::vector<PartitionPath>& paths);

} // namespace coalhaus
