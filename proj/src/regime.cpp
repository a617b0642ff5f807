#include "coalhaus/regime.hpp"

#include <cmath>
#include <stdexcept>

namespace coalhaus {

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::FiniteVariance: return "finite_variance";
        case Regime::Stable: return "stable";
        case Regime::Neveu: return "neveu";
    }
    return "?";
}

Regime regime_of(const OffspringLaw& law) {
    switch (law.kind()) {
        case OffspringKind::ExplicitFinite:
        case OffspringKind::Geometric: return Regime::FiniteVariance;
        case OffspringKind::StableTail: return Regime::Stable;
        case OffspringKind::NeveuTail: return Regime::Neveu;
    }
    return Regime::FiniteVariance;
}

double RegimeConfig::r_K() const {
    switch (regime()) {
        case Regime::FiniteVariance: return K;
        case Regime::Stable: return std::pow(K, law.alpha() - 1.0);
        case Regime::Neveu: return 1.0;
    }
    return K;
}

double RegimeConfig::s_K() const {
    switch (regime()) {
        case Regime::FiniteVariance:
        case Regime::Stable: return K;
        case Regime::Neveu: return K * std::log(K);
    }
    return K;
}

double RegimeConfig::n_star() const {
    switch (regime()) {
        case Regime::FiniteVariance:
        case Regime::Stable: return (b * law.mean() - d) / c;
        case Regime::Neveu: return b * law.tail_constant() / c;
    }
    return 0.0;
}

std::int64_t RegimeConfig::initial_size() const {
    return static_cast<std::int64_t>(std::llround(s_K() * n_star()));
}

void RegimeConfig::validate() const {
    if (!(b > 0.0)) throw std::invalid_argument("regime: b must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("regime: c must be positive");
    if (!(d >= 0.0)) throw std::invalid_argument("regime: d must be nonnegative");
    if (!(K >= 1.0)) throw std::invalid_argument("regime: K must be at least 1");
    if (regime() != Regime::Neveu && !(b * law.mean() > d))
        throw std::invalid_argument("regime: requires b * mean > d");
    // Neveu needs K > 1 so that s_K = K log K is positive.
    if (regime() == Regime::Neveu && !(K > 1.0))
        throw std::invalid_argument("regime: Neveu requires K > 1");
}

} // namespace coalhaus
