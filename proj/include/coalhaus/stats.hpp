#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace coalhaus {

/** One accept/reject verdict. pass always means "statistic within threshold"
 *  in the direction stated by the test name. */
struct TestReport {
    std::string test;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::int64_t n = 0;        // sample size driving the test
    std::uint64_t seed = 0;    // master seed of the data behind it
    std::string metadata;      // free-form context, may be empty
};

TestReport make_report(std::string test, double statistic, double threshold,
                       std::int64_t n, std::uint64_t seed, std::string metadata = "");

/** sup_x |F_n(x) - F(x)| against a reference CDF. Throws on empty input. */
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

/** sup_x |F_a(x) - F_b(x)|; the plain statistic, conservative for ties. */
double two_sample_ks(std::vector<double> a, std::vector<double> b);

/** Pearson statistic sum (O - E)^2 / E with E = n * probs. */
double chi_square_gof(const std::vector<std::int64_t>& observed,
                      const std::vector<double>& probs);

/** Homogeneity statistic for a 2 x C table with rows a and b; df = C - 1
 *  after dropping empty columns. */
double chi_square_homogeneity(const std::vector<std::int64_t>& a,
                              const std::vector<std::int64_t>& b);

/** (count - rate * horizon) / sqrt(rate * horizon). */
double poisson_rate_test(std::int64_t count, double horizon, double rate);

/** Upper quantile chi2_{df}(1 - significance). */
double chi_square_threshold(int df, double significance);

/** One-sample Kolmogorov critical value sqrt(-log(significance / 2) / 2) / sqrt(n). */
double ks_threshold_asymptotic(std::int64_t n, double significance);

/** Critical value for the two-sample KS statistic calibrated by random
 *  permutations of the pooled sample: the ceil((1-sig)(rounds+1))-th order
 *  statistic of the permuted statistics. Deterministic given the seed, and
 *  valid for discrete data where the asymptotic formula is not. */
double ks_threshold_permutation(const std::vector<double>& a,
                                const std::vector<double>& b,
                                double significance, int rounds,
                                std::uint64_t seed);

} // namespace coalhaus
