#pragma once

#include <functional>
#include <string>

namespace coalhaus {

/** Finite measure Lambda = a * delta_0 + Lambda_0(du) on [0,1] driving a
 *  Lambda-coalescent. The atom a at zero is the Kingman (pairwise) part;
 *  Lambda_0 is given by a density u -> g(u) on (0,1].
 *
 *  Canonical densities:
 *    BetaPaper(alpha, scale):  g(u) = scale * (1-u)^(alpha-1) * u^(1-alpha),
 *      the unnormalized Beta(2-alpha, alpha) shape arising in the stable
 *      regime with scale = b * p0 / n_star^(alpha-1).
 *    UniformScaled(scale):     g(u) = scale, the Bolthausen-Sznitman case
 *      with scale = b * p0.
 */
class LambdaMeasure {
  public:
    enum class DensityKind { None, BetaPaper, UniformScaled, General };

    static LambdaMeasure kingman(double a);
    static LambdaMeasure beta_paper(double alpha, double scale);
    static LambdaMeasure uniform_scaled(double scale);
    static LambdaMeasure general(std::function<double(double)> density);

    /** Adds an atom at zero to any of the above. */
    LambdaMeasure with_atom(double a) const;

    double atom() const { return atom_; }
    DensityKind density_kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double scale() const { return scale_; }

    /** Density of Lambda_0 at u in (0,1). */
    double density(double u) const;

    /** int u^(j-2) (1-u)^(n-j) Lambda_0(du) for 2 <= j <= n. Closed forms for
     *  the canonical densities; for General, split adaptive quadrature that
     *  absorbs integrable power singularities u^(1-alpha), alpha < 2, at the
     *  origin by substitution (absolute accuracy ~1e-11). */
    double collision_integral(int n, int j) const;

    /** Total mass a + Lambda_0([0,1]). */
    double total_mass() const;

    std::string describe() const;

  private:
    LambdaMeasure() = default;
    double atom_ = 0.0;
    DensityKind kind_ = DensityKind::None;
    double alpha_ = 0.0;
    double scale_ = 0.0;
    std::function<double(double)> general_;
};

} // namespace coalhaus
