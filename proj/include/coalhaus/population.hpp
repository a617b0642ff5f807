#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "coalhaus/regime.hpp"
#include "coalhaus/rng.hpp"

namespace coalhaus {

/** Reserved type label reported once the population is extinct. */
inline constexpr std::uint32_t kExtinctType = 0;

/** Event-exact record of the population size: N == sizes[i] on
 *  [times_model[i], times_model[i+1]), and the last value extends to
 *  end_time_model. Times are in model units. */
struct SizePath {
    std::vector<double> times_model;
    std::vector<std::int64_t> sizes;
    double end_time_model = 0.0;
};

struct TrajectorySummary {
    double horizon = 0.0; // rescaled
    double r_K = 1.0;
    double s_K = 1.0;
    std::vector<double> grid; // rescaled observation times
    /** n^K = N / s_K at each grid time; left limits at grid points that lie
     *  exactly on a jump. */
    std::vector<double> n_values;
    /** Per grid time, (type, frequency) pairs sorted by type. Empty unless
     *  requested. Extinct states report {(0, 1)}. */
    std::vector<std::vector<std::pair<std::uint32_t, double>>> frequencies;
    bool extinct = false;
    double extinction_time = 0.0; // rescaled; meaningful only when extinct
    SizePath size_path;
    std::uint64_t births = 0;
    std::uint64_t deaths = 0;
    std::uint64_t offspring_total = 0;
    std::int64_t final_size = 0;
    std::vector<std::pair<std::uint32_t, std::int64_t>> final_counts;
};

struct PopulationOptions {
    std::vector<double> grid;
    bool record_frequencies = false;
    bool record_size_path = true;
};

/** Distinct labels 1..n0, so the full family structure stays visible. */
std::vector<std::uint32_t> initial_distinct(std::int64_t n0);

/** i.i.d. uniform labels over {1,...,alphabet}. */
std::vector<std::uint32_t> initial_iid(std::int64_t n0, std::uint32_t alphabet, Rng& rng);

/** Forward Gillespie simulation of the logistic branching process: each
 *  individual births at rate b (adding Z copies of its own type, Z from the
 *  offspring law) and dies at rate d + c N / K. State N = 0 is absorbing. */
TrajectorySummary simulate_population(const RegimeConfig& cfg,
                                      std::vector<std::uint32_t> initial,
                                      double horizon,
                                      const PopulationOptions& opt, Rng& rng);

struct ThresholdSpec {
    enum class Kind { Band, LowerBarrier };
    Kind kind = Kind::Band;
    double center = 0.0;
    double eps = 0.0;
    double barrier = 0.0;

    /** Exit of the two-sided band |n - center| > eps. */
    static ThresholdSpec band(double center, double eps);
    /** First passage below the barrier (n < barrier). */
    static ThresholdSpec lower_barrier(double level);

    bool violated(double n) const;
};

/** First rescaled time the size path violates the threshold, checking every
 *  jump (event-exact, not grid-based); nullopt when never triggered. */
std::optional<double> tau_K(const TrajectorySummary& traj, const ThresholdSpec& spec);

struct OccupationMeasure {
    std::vector<double> edges;  // ascending bin edges over n
    std::vector<double> masses; // rescaled time mass per bin [edges[i], edges[i+1])
    double below = 0.0;         // mass at n < edges.front()
    double above = 0.0;         // mass at n >= edges.back()
    double total = 0.0;         // min(horizon, tau) in rescaled units

    double fraction_in(double lo, double hi) const;
};

/** Time-weighted histogram of n^K up to the stopping spec (or the full
 *  recorded horizon). Total mass equals min(horizon, tau) exactly. */
OccupationMeasure occupation_measure(const TrajectorySummary& traj,
                                     const std::vector<double>& edges,
                                     const std::optional<ThresholdSpec>& stop);

/** V_eps(n) = n/(n_star+eps) - 1 - log(n/(n_star-eps)); requires n > 0 and
 *  0 < eps < n_star. */
double lyapunov_V(double n, double n_star, double eps);

} // namespace coalhaus
