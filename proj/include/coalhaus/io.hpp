#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coalhaus/genealogy.hpp"
#include "coalhaus/limit_lookdown.hpp"
#include "coalhaus/lookdown.hpp"
#include "coalhaus/partition.hpp"
#include "coalhaus/population.hpp"
#include "coalhaus/rates.hpp"
#include "coalhaus/stats.hpp"

namespace coalhaus {

/** Provenance header written as comment lines at the top of every output
 *  file: the FNV-1a hash of the configuration and the master seed. */
struct OutputStamp {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

/** Shortest decimal that round-trips the double exactly. */
std::string format_double(double v);

/** Throws ConfigError(Io) when the path cannot be opened for writing. */
void write_text_file(const std::string& path, const std::string& content);

/** rep,t_rescaled,n,extinct */
std::string trajectories_csv(const OutputStamp& stamp,
                             const std::vector<TrajectorySummary>& trajs);

/** rep,t_rescaled,type,freq (requires frequencies recorded) */
std::string frequencies_csv(const OutputStamp& stamp,
                            const std::vector<TrajectorySummary>& trajs);

/** rep,t_model,kind,levels with levels dash-separated; run metadata (k,
 *  r_K, horizon, mode) stored in a second comment line. */
std::string lookdown_events_csv(const OutputStamp& stamp,
                                const std::vector<LookdownRun>& runs);

/** rep,t,levels for limit-lookdown logs (time already in limit units). */
std::string limit_events_csv(const OutputStamp& stamp,
                             const std::vector<LimitRun>& runs);

/** rep,t,partition; one row for the initial partition at t = 0, one per
 *  step. The partition column is the 1,2|3-style block text and is not
 *  quoted: split rows on the first two commas only. */
std::string partitions_csv(const OutputStamp& stamp,
                           const std::vector<PartitionPath>& paths);

/** K,j,sup_gap plus an all-j summary row per K. */
std::string convergence_csv(const OutputStamp& stamp, const ConvergenceReport& report);

/** n,j,rate for 2 <= j <= n <= n_max. */
std::string rate_table_csv(const OutputStamp& stamp,
                           const std::vector<std::vector<double>>& table);

/** JSON array of {n, pass, seed, statistic, test, threshold} objects with
 *  keys sorted; metadata included only when nonempty. */
std::string reports_json(const OutputStamp& stamp, const std::vector<TestReport>& reports);

/** Parsed form of a lookdown_events_csv file. */
struct EventsFile {
    int k = 0;
    double r_K = 1.0;
    double horizon = 0.0;
    LookdownMode mode = LookdownMode::Scalable;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::vector<LookdownRun> runs; // events, k, r_K, horizon, mode populated
};

EventsFile read_lookdown_events_csv(const std::string& path);

} // namespace coalhaus
