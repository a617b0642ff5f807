#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "coalhaus/rng.hpp"

namespace coalhaus {

/** Marker for moments that do not exist; callers branch on is_infinite()
 *  instead of catching exceptions. */
inline constexpr double kInfiniteMoment = std::numeric_limits<double>::infinity();
inline bool is_infinite(double m) { return std::isinf(m); }

enum class OffspringKind { ExplicitFinite, Geometric, StableTail, NeveuTail };

/** Offspring law (p_l)_{l >= 1} of a single birth event. Immutable value.
 *
 *  The two canonical heavy-tail families are defined through their survival
 *  functions: StableTail(alpha) has P(Z >= l) = l^-alpha with alpha in (1,2),
 *  NeveuTail has P(Z >= l) = 1/l. Their pmfs are survival differences, which
 *  makes pmf(l) * l^(1+alpha) -> alpha and pmf(l) * l^2 -> 1 respectively.
 */
class OffspringLaw {
  public:
    static OffspringLaw explicit_finite(std::vector<double> probs);
    static OffspringLaw geometric(double q);
    static OffspringLaw stable_tail(double alpha);
    static OffspringLaw neveu_tail();

    OffspringKind kind() const { return kind_; }

    /** P(Z = l) for l >= 1; zero outside the support. */
    double pmf(std::int64_t l) const;

    /** P(Z >= l) for l >= 1; survival(1) == 1. */
    double survival(std::int64_t l) const;

    /** Inverse-CDF sample given a uniform u in (0,1). */
    std::int64_t sample_from_u(double u) const;

    std::int64_t sample(Rng& rng) const { return sample_from_u(rng.u01()); }

    /** E[Z]; kInfiniteMoment for NeveuTail. */
    double mean() const { return mean_; }

    /** E[Z^2]; kInfiniteMoment for both heavy-tail families. */
    double second_moment() const { return second_moment_; }

    /** lim pmf(l) * l^(1+alpha): alpha for StableTail, 1 for NeveuTail
     *  (with alpha = 1), and 0 for the light-tailed families. */
    double tail_constant() const { return tail_constant_; }

    /** Tail exponent alpha; only meaningful for the heavy-tail families. */
    double alpha() const { return alpha_; }

    /** Largest l with pmf(l) > 0, or int64 max when unbounded. */
    std::int64_t max_support() const { return max_support_; }

    std::string describe() const;

  private:
    OffspringLaw() = default;

    OffspringKind kind_ = OffspringKind::Geometric;
    double q_ = 0.5;
    double alpha_ = 0.0;
    std::vector<double> probs_;
    std::vector<double> cdf_;
    double mean_ = 0.0;
    double second_moment_ = 0.0;
    double tail_constant_ = 0.0;
    std::int64_t max_support_ = std::numeric_limits<std::int64_t>::max();
};

} // namespace coalhaus
