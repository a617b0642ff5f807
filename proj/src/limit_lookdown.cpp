#include "coalhaus/limit_lookdown.hpp"

#include <stdexcept>

#include "coalhaus/coalescent.hpp"
#include "coalhaus/lookdown.hpp"
#include "coalhaus/numeric.hpp"

namespace coalhaus {

using numeric::binomial_small;

double RestrictedRates::subset_rate(int j) const {
    if (j < 2 || j > k) throw std::invalid_argument("subset_rate: need 2 <= j <= k");
    return by_size[static_cast<std::size_t>(j)];
}

double RestrictedRates::total_rate() const {
    double total = 0.0;
    for (int j = 2; j <= k; ++j)
        total += binomial_small(k, j) * by_size[static_cast<std::size_t>(j)];
    return total;
}

RestrictedRates restricted_event_rates(const LambdaMeasure& lambda, int k) {
    if (k < 2) throw std::invalid_argument("restricted_event_rates: need k >= 2");
    RestrictedRates rates;
    rates.k = k;
    rates.by_size.assign(static_cast<std::size_t>(k) + 1, 0.0);
    // Identical to the coalescent collision rate with n = k blocks; the
    // forward projection and the backward merger rates are the same integral.
    for (int j = 2; j <= k; ++j)
        rates.by_size[static_cast<std::size_t>(j)] = merge_rate(lambda, k, j);
    return rates;
}

LimitRun simulate_limit_lookdown(const LambdaMeasure& lambda, int k,
                                 const std::vector<std::uint32_t>& initial,
                                 double horizon, Rng& rng) {
    if (k < 2) throw std::invalid_argument("limit lookdown: need k >= 2");
    if (static_cast<int>(initial.size()) != k)
        throw std::invalid_argument("limit lookdown: initial types must have length k");
    if (!(horizon >= 0.0)) throw std::invalid_argument("limit lookdown: bad horizon");

    const RestrictedRates rates = restricted_event_rates(lambda, k);
    std::vector<double> size_weights(static_cast<std::size_t>(k) + 1, 0.0);
    double total = 0.0;
    for (int j = 2; j <= k; ++j) {
        size_weights[static_cast<std::size_t>(j)] =
            binomial_small(k, j) * rates.by_size[static_cast<std::size_t>(j)];
        total += size_weights[static_cast<std::size_t>(j)];
    }

    LimitRun run;
    run.k = k;
    run.horizon = horizon;
    run.initial_types = initial;
    run.type_path.push_back(initial);
    if (total <= 0.0) return run;

    std::vector<std::uint32_t> window = initial;
    double t = 0.0;
    while (true) {
        t += rng.exponential(total);
        if (t > horizon) break;

        double pick = rng.u01() * total;
        int j = k;
        for (int s = 2; s <= k; ++s) {
            pick -= size_weights[static_cast<std::size_t>(s)];
            if (pick < 0.0) {
                j = s;
                break;
            }
        }
        const auto J64 = sample_subset(k, j, rng);
        std::vector<int> J(J64.begin(), J64.end());

        std::vector<int> insertions(J.begin() + 1, J.end());
        apply_restricted_birth(window, k, j - 1, J.front(), insertions);

        run.events.push_back({t, std::move(J)});
        run.type_path.push_back(window);
    }
    return run;
}

} // namespace coalhaus
