#include "coalhaus/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coalhaus/numeric.hpp"
#include "coalhaus/rng.hpp"

namespace coalhaus {

TestReport make_report(std::string test, double statistic, double threshold,
                       std::int64_t n, std::uint64_t seed, std::string metadata) {
    TestReport r;
    r.test = std::move(test);
    r.statistic = statistic;
    r.threshold = threshold;
    r.pass = statistic <= threshold;
    r.n = n;
    r.seed = seed;
    r.metadata = std::move(metadata);
    return r;
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("two_sample_ks: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double chi_square_gof(const std::vector<std::int64_t>& observed,
                      const std::vector<double>& probs) {
    if (observed.size() != probs.size() || observed.empty())
        throw std::invalid_argument("chi_square_gof: size mismatch");
    std::int64_t total = 0;
    for (std::int64_t o : observed) total += o;
    if (total <= 0) throw std::invalid_argument("chi_square_gof: no observations");
    double stat = 0.0;
    for (std::size_t c = 0; c < observed.size(); ++c) {
        if (!(probs[c] > 0.0))
            throw std::invalid_argument("chi_square_gof: nonpositive expected probability");
        const double e = static_cast<double>(total) * probs[c];
        const double diff = static_cast<double>(observed[c]) - e;
        stat += diff * diff / e;
    }
    return stat;
}

double chi_square_homogeneity(const std::vector<std::int64_t>& a,
                              const std::vector<std::int64_t>& b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("chi_square_homogeneity: size mismatch");
    double na = 0.0, nb = 0.0;
    for (std::int64_t v : a) na += static_cast<double>(v);
    for (std::int64_t v : b) nb += static_cast<double>(v);
    if (na <= 0.0 || nb <= 0.0)
        throw std::invalid_argument("chi_square_homogeneity: empty row");
    const double total = na + nb;
    double stat = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double col = static_cast<double>(a[c] + b[c]);
        if (col == 0.0) continue; // empty column carries no information
        const double ea = col * na / total, eb = col * nb / total;
        const double da = static_cast<double>(a[c]) - ea;
        const double db = static_cast<double>(b[c]) - eb;
        stat += da * da / ea + db * db / eb;
    }
    return stat;
}

double poisson_rate_test(std::int64_t count, double horizon, double rate) {
    if (!(horizon > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("poisson_rate_test: need positive horizon and rate");
    const double mean = rate * horizon;
    return (static_cast<double>(count) - mean) / std::sqrt(mean);
}

double chi_square_threshold(int df, double significance) {
    if (df < 1 || !(significance > 0.0) || !(significance < 1.0))
        throw std::invalid_argument("chi_square_threshold: bad arguments");
    return numeric::chi_square_quantile(1.0 - significance, static_cast<double>(df));
}

double ks_threshold_asymptotic(std::int64_t n, double significance) {
    if (n < 1) throw std::invalid_argument("ks_threshold_asymptotic: n < 1");
    return std::sqrt(-std::log(significance / 2.0) / 2.0) /
           std::sqrt(static_cast<double>(n));
}

double ks_threshold_permutation(const std::vector<double>& a,
                                const std::vector<double>& b,
                                double significance, int rounds,
                                std::uint64_t seed) {
    if (rounds < 1) throw std::invalid_argument("ks_threshold_permutation: rounds < 1");
    const std::size_t na = a.size();
    std::vector<double> pool = a;
    pool.insert(pool.end(), b.begin(), b.end());
    if (na == 0 || na == pool.size())
        throw std::invalid_argument("ks_threshold_permutation: empty sample");

    Rng rng(seed);
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(rounds));
    std::vector<double> pa(na), pb(pool.size() - na);
    for (int r = 0; r < rounds; ++r) {
        for (std::size_t i = pool.size() - 1; i > 0; --i)
            std::swap(pool[i], pool[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        pa.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(na));
        pb.assign(pool.begin() + static_cast<std::ptrdiff_t>(na), pool.end());
        stats.push_back(two_sample_ks(pa, pb));
    }
    std::sort(stats.begin(), stats.end());
    const double rank = std::ceil((1.0 - significance) * (rounds + 1.0));
    const std::size_t idx =
        std::min(stats.size() - 1, static_cast<std::size_t>(rank) - 1);
    return stats[idx];
}

} // namespace coalhaus
