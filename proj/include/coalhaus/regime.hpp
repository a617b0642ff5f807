#pragma once

#include <cstdint>
#include <string>

#include "coalhaus/offspring.hpp"

namespace coalhaus {

enum class Regime { FiniteVariance, Stable, Neveu };

std::string regime_name(Regime r);

/** Which regime an offspring law belongs to. */
Regime regime_of(const OffspringLaw& law);

/** Model parameters for carrying capacity K together with the derived
 *  scaling constants. Rates inside simulators are in model time; all public
 *  horizons and trajectory grids are in rescaled time t = t_model / r_K.
 *
 *  Derived quantities:
 *    r_K: time rescaling. K (finite variance), K^(alpha-1) (stable), 1 (Neveu).
 *    s_K: size rescaling, n = N / s_K. K in regimes 1 and 2, K log K for Neveu.
 *    n_star: carrying capacity, (b m - d)/c in regimes 1 and 2, b p0 / c for Neveu.
 */
struct RegimeConfig {
    double b = 1.0;
    double d = 0.0;
    double c = 1.0;
    double K = 100.0;
    OffspringLaw law = OffspringLaw::geometric(0.5);

    Regime regime() const { return regime_of(law); }
    double r_K() const;
    double s_K() const;
    double n_star() const;
    /** Default lower absorbing guard c0 = n_star / 2. */
    double c0() const { return 0.5 * n_star(); }

    /** Initial population size N(0) = round(s_K * n_star). */
    std::int64_t initial_size() const;

    /** Throws std::invalid_argument when parameters are inconsistent
     *  (non-positive b or c, negative d, K < 1, or b m <= d in the
     *  finite-mean regimes). */
    void validate() const;
};

} // namespace coalhaus
