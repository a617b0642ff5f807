#pragma once

#include <cstdint>
#include <vector>

#include "coalhaus/lambda_measure.hpp"
#include "coalhaus/rng.hpp"

namespace coalhaus {

/** Event rates of the limiting lookdown projected to the lowest k levels.
 *  A reproduction event hitting exactly the level set J happens at rate
 *  lambda_tilde(J) = atom * 1{|J|=2} + int u^|J| (1-u)^(k-|J|) Lambda0(du)/u^2,
 *  which depends on J only through its size. */
struct RestrictedRates {
    int k = 0;
    /** by_size[j] = lambda_tilde for |J| = j, defined for 2 <= j <= k. */
    std::vector<double> by_size;

    double subset_rate(int j) const;
    /** Sum over all subsets: sum_j C(k,j) * by_size[j]. */
    double total_rate() const;
};

RestrictedRates restricted_event_rates(const LambdaMeasure& lambda, int k);

struct LimitEvent {
    double t;
    std::vector<int> levels; // J, ascending, subset of [k], |J| >= 2
};

struct LimitRun {
    int k = 0;
    double horizon = 0.0;
    std::vector<std::uint32_t> initial_types;
    std::vector<LimitEvent> events;
    /** type_path[i] = window after the first i events (index 0 = initial). */
    std::vector<std::vector<std::uint32_t>> type_path;
};

/** Simulates the limit lookdown on levels 1..k over [0, horizon]: competing
 *  clocks, one per subset J of [k] with |J| >= 2, at rate lambda_tilde(J).
 *  At an event the type at min J is copied onto J \ {min J}; the displaced
 *  types shift up in order and fall off the window above level k. */
LimitRun simulate_limit_lookdown(const LambdaMeasure& lambda, int k,
                                 const std::vector<std::uint32_t>& initial,
                                 double horizon, Rng& rng);

} // namespace coalhaus
