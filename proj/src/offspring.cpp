#include "coalhaus/offspring.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "coalhaus/numeric.hpp"

namespace coalhaus {

OffspringLaw OffspringLaw::explicit_finite(std::vector<double> probs) {
    if (probs.empty())
        throw std::invalid_argument("offspring: explicit law needs at least one probability");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw std::invalid_argument("offspring: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("offspring: probabilities must sum to 1");
    OffspringLaw law;
    law.kind_ = OffspringKind::ExplicitFinite;
    law.probs_ = std::move(probs);
    law.cdf_.resize(law.probs_.size());
    std::partial_sum(law.probs_.begin(), law.probs_.end(), law.cdf_.begin());
    law.cdf_.back() = 1.0;
    law.max_support_ = static_cast<std::int64_t>(law.probs_.size());
    double m = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < law.probs_.size(); ++i) {
        const double l = static_cast<double>(i + 1);
        m += l * law.probs_[i];
        m2 += l * l * law.probs_[i];
    }
    law.mean_ = m;
    law.second_moment_ = m2;
    law.tail_constant_ = 0.0;
    return law;
}

OffspringLaw OffspringLaw::geometric(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("offspring: geometric q must lie in (0,1)");
    OffspringLaw law;
    law.kind_ = OffspringKind::Geometric;
    law.q_ = q;
    law.mean_ = 1.0 / (1.0 - q);
    law.second_moment_ = (1.0 + q) / ((1.0 - q) * (1.0 - q));
    law.tail_constant_ = 0.0;
    return law;
}

OffspringLaw OffspringLaw::stable_tail(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument("offspring: stable tail exponent must lie in (1,2)");
    OffspringLaw law;
    law.kind_ = OffspringKind::StableTail;
    law.alpha_ = alpha;
    law.mean_ = numeric::zeta_sum(alpha); // E[Z] = sum of survivals = zeta(alpha)
    law.second_moment_ = kInfiniteMoment;
    law.tail_constant_ = alpha;
    return law;
}

OffspringLaw OffspringLaw::neveu_tail() {
    OffspringLaw law;
    law.kind_ = OffspringKind::NeveuTail;
    law.alpha_ = 1.0;
    law.mean_ = kInfiniteMoment;
    law.second_moment_ = kInfiniteMoment;
    law.tail_constant_ = 1.0;
    return law;
}

double OffspringLaw::survival(std::int64_t l) const {
    if (l <= 1) return 1.0;
    switch (kind_) {
        case OffspringKind::ExplicitFinite:
            if (l > max_support_) return 0.0;
            return 1.0 - cdf_[static_cast<std::size_t>(l - 2)];
        case OffspringKind::Geometric:
            return std::pow(q_, static_cast<double>(l - 1));
        case OffspringKind::StableTail:
            return std::pow(static_cast<double>(l), -alpha_);
        case OffspringKind::NeveuTail:
            return 1.0 / static_cast<double>(l);
    }
    return 0.0;
}

double OffspringLaw::pmf(std::int64_t l) const {
    if (l < 1) return 0.0;
    switch (kind_) {
        case OffspringKind::ExplicitFinite:
            if (l > max_support_) return 0.0;
            return probs_[static_cast<std::size_t>(l - 1)];
        case OffspringKind::Geometric:
            return (1.0 - q_) * std::pow(q_, static_cast<double>(l - 1));
        case OffspringKind::StableTail:
        case OffspringKind::NeveuTail:
            return survival(l) - survival(l + 1);
    }
    return 0.0;
}

std::int64_t OffspringLaw::sample_from_u(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("offspring: u must lie in (0,1)");
    switch (kind_) {
        case OffspringKind::ExplicitFinite: {
            // Smallest l with cdf(l) >= u.
            std::size_t lo = 0;
            while (lo + 1 < cdf_.size() && cdf_[lo] < u) ++lo;
            return static_cast<std::int64_t>(lo + 1);
        }
        case OffspringKind::Geometric: {
            const double r = std::log1p(-u) / std::log(q_);
            const std::int64_t l = static_cast<std::int64_t>(std::ceil(r));
            return l < 1 ? 1 : l;
        }
        case OffspringKind::StableTail: {
            const double z = std::pow(u, -1.0 / alpha_);
            return static_cast<std::int64_t>(z);
        }
        case OffspringKind::NeveuTail:
            return static_cast<std::int64_t>(1.0 / u);
    }
    return 1;
}

std::string OffspringLaw::describe() const {
    char buf[64];
    switch (kind_) {
        case OffspringKind::ExplicitFinite:
            return "explicit(" + std::to_string(probs_.size()) + " atoms)";
        case OffspringKind::Geometric:
            std::snprintf(buf, sizeof buf, "geometric(q=%g)", q_);
            return buf;
        case OffspringKind::StableTail:
            std::snprintf(buf, sizeof buf, "stable(alpha=%g)", alpha_);
            return buf;
        case OffspringKind::NeveuTail:
            return "neveu";
    }
    return "?";
}

} // namespace coalhaus
