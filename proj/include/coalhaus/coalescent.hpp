#pragma once

#include <vector>

#include "coalhaus/lambda_measure.hpp"
#include "coalhaus/partition.hpp"
#include "coalhaus/rng.hpp"

namespace coalhaus {

/** Rate at which a fixed j-tuple of the current n blocks merges:
 *  lambda(n, j) = a 1{j=2} + int u^(j-2) (1-u)^(n-j) Lambda_0(du). */
double merge_rate(const LambdaMeasure& lambda, int n, int j);

/** lambda(n, j) for 2 <= j <= n <= n_max; row n, entries j = 2..n. */
std::vector<std::vector<double>> rate_table(const LambdaMeasure& lambda, int n_max);

/** Jump-chain distribution of the merger size from n blocks:
 *  P(j) proportional to C(n, j) lambda(n, j), returned for j = 2..n. */
std::vector<double> jump_chain(const LambdaMeasure& lambda, int n);

/** Exact simulation of the Lambda-coalescent started from the given
 *  partition, run until absorption or the horizon. Each step draws an
 *  exponential holding time at total rate sum_j C(n,j) lambda(n,j), then a
 *  merger size j and a uniform j-subset of blocks. */
PartitionPath simulate_coalescent(const LambdaMeasure& lambda, Partition initial,
                                  double horizon, Rng& rng);

} // namespace coalhaus
