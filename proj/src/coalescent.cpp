#include "coalhaus/coalescent.hpp"

#include <stdexcept>

#include "coalhaus/numeric.hpp"

namespace coalhaus {

double merge_rate(const LambdaMeasure& lambda, int n, int j) {
    if (j < 2 || j > n)
        throw std::invalid_argument("merge_rate: needs 2 <= j <= n");
    double rate = lambda.collision_integral(n, j);
    if (j == 2) rate += lambda.atom();
    return rate;
}

std::vector<std::vector<double>> rate_table(const LambdaMeasure& lambda, int n_max) {
    std::vector<std::vector<double>> table;
    for (int n = 2; n <= n_max; ++n) {
        std::vector<double> row;
        for (int j = 2; j <= n; ++j) row.push_back(merge_rate(lambda, n, j));
        table.push_back(std::move(row));
    }
    return table;
}

std::vector<double> jump_chain(const LambdaMeasure& lambda, int n) {
    if (n < 2) throw std::invalid_argument("jump_chain: needs n >= 2");
    std::vector<double> w(static_cast<std::size_t>(n - 1));
    double total = 0.0;
    for (int j = 2; j <= n; ++j) {
        const double v = numeric::binomial_small(n, j) * merge_rate(lambda, n, j);
        w[static_cast<std::size_t>(j - 2)] = v;
        total += v;
    }
    if (!(total > 0.0))
        throw std::invalid_argument("jump_chain: measure has no mass");
    for (double& v : w) v /= total;
    return w;
}

PartitionPath simulate_coalescent(const LambdaMeasure& lambda, Partition initial,
                                  double horizon, Rng& rng) {
    if (!(horizon >= 0.0))
        throw std::invalid_argument("simulate_coalescent: horizon must be nonnegative");
    PartitionPath path;
    path.horizon = horizon;
    path.initial = initial;

    // Per-size weights C(n,j) lambda(n,j) are recomputed when the block count
    // changes; individual subsets appear only in the jump sampler.
    Partition cur = std::move(initial);
    double t = 0.0;
    while (cur.num_blocks() >= 2) {
        const int n = cur.num_blocks();
        std::vector<double> w(static_cast<std::size_t>(n - 1));
        double total = 0.0;
        for (int j = 2; j <= n; ++j) {
            const double v = numeric::binomial_small(n, j) * merge_rate(lambda, n, j);
            w[static_cast<std::size_t>(j - 2)] = v;
            total += v;
        }
        if (!(total > 0.0)) break;
        t += rng.exponential(total);
        if (t > horizon) break;

        double pick = rng.u01() * total;
        int j = n;
        for (int jj = 2; jj <= n; ++jj) {
            pick -= w[static_cast<std::size_t>(jj - 2)];
            if (pick <= 0.0) { j = jj; break; }
        }
        const auto subset = sample_subset(n, j, rng);
        std::vector<int> merged;
        merged.reserve(subset.size());
        for (auto b : subset) merged.push_back(static_cast<int>(b - 1));

        cur.merge_blocks(merged);
        path.steps.push_back({t, std::move(merged), cur});
    }
    return path;
}

} // namespace coalhaus
