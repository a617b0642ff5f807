#include "coalhaus/lambda_measure.hpp"

#include <cmath>
#include <stdexcept>

#include "coalhaus/numeric.hpp"

namespace coalhaus {

namespace {

/** int_0^1 u^p (1-u)^r g(u) du for a density with at worst an integrable
 *  power singularity u^(1-alpha), alpha < 2, at the origin and none at 1.
 *  The upper half is integrated directly. On (0, 1/2] the substitution
 *  u = s^q / 2 turns the singularity into a factor s^(q(2-alpha)-1), which
 *  vanishes at s = 0 for alpha < 2 - 1/q; g is never evaluated at u = 0
 *  (s small enough that u underflows contributes exactly zero, and the mass
 *  below the underflow point is < (1e-300)^(2-alpha)). */
double singular_integral(const std::function<double(double)>& g, int p, int r) {
    const double q = 200.0;
    const double pp = static_cast<double>(p), rr = static_cast<double>(r);
    auto lower = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double u = 0.5 * std::pow(s, q);
        if (u <= 0.0) return 0.0;
        return 0.5 * q * std::pow(s, q - 1.0) * std::pow(u, pp) *
               std::pow(1.0 - u, rr) * g(u);
    };
    auto upper = [&](double u) {
        return std::pow(u, pp) * std::pow(1.0 - u, rr) * g(u);
    };
    return numeric::integrate(lower, 0.0, 1.0, 1e-12) +
           numeric::integrate(upper, 0.5, 1.0, 1e-12);
}

} // namespace

LambdaMeasure LambdaMeasure::kingman(double a) {
    if (!(a >= 0.0)) throw std::invalid_argument("lambda: atom must be nonnegative");
    LambdaMeasure m;
    m.atom_ = a;
    return m;
}

LambdaMeasure LambdaMeasure::beta_paper(double alpha, double scale) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument("lambda: beta density needs alpha in (1,2)");
    if (!(scale > 0.0)) throw std::invalid_argument("lambda: scale must be positive");
    LambdaMeasure m;
    m.kind_ = DensityKind::BetaPaper;
    m.alpha_ = alpha;
    m.scale_ = scale;
    return m;
}

LambdaMeasure LambdaMeasure::uniform_scaled(double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("lambda: scale must be positive");
    LambdaMeasure m;
    m.kind_ = DensityKind::UniformScaled;
    m.scale_ = scale;
    return m;
}

LambdaMeasure LambdaMeasure::general(std::function<double(double)> density) {
    if (!density) throw std::invalid_argument("lambda: missing density");
    LambdaMeasure m;
    m.kind_ = DensityKind::General;
    m.general_ = std::move(density);
    return m;
}

LambdaMeasure LambdaMeasure::with_atom(double a) const {
    if (!(a >= 0.0)) throw std::invalid_argument("lambda: atom must be nonnegative");
    LambdaMeasure m = *this;
    m.atom_ = a;
    return m;
}

double LambdaMeasure::density(double u) const {
    if (!(u > 0.0 && u < 1.0)) return 0.0;
    switch (kind_) {
        case DensityKind::None: return 0.0;
        case DensityKind::BetaPaper:
            return scale_ * std::pow(1.0 - u, alpha_ - 1.0) * std::pow(u, 1.0 - alpha_);
        case DensityKind::UniformScaled: return scale_;
        case DensityKind::General: return general_(u);
    }
    return 0.0;
}

double LambdaMeasure::collision_integral(int n, int j) const {
    if (j < 2 || j > n)
        throw std::invalid_argument("lambda: collision integral needs 2 <= j <= n");
    switch (kind_) {
        case DensityKind::None:
            return 0.0;
        case DensityKind::BetaPaper:
            // int u^(j-2-alpha+1) ... = scale * B(j - alpha, n - j + alpha)
            return scale_ * numeric::beta(static_cast<double>(j) - alpha_,
                                          static_cast<double>(n - j) + alpha_);
        case DensityKind::UniformScaled: {
            // scale * B(j-1, n-j+1) = scale * (j-2)! (n-j)! / (n-1)!
            // as an explicit factorial ratio; exact in double for n <= 170.
            double num = 1.0;
            for (int i = 2; i <= j - 2; ++i) num *= static_cast<double>(i);
            for (int i = 2; i <= n - j; ++i) num *= static_cast<double>(i);
            double den = 1.0;
            for (int i = 2; i <= n - 1; ++i) den *= static_cast<double>(i);
            return scale_ * num / den;
        }
        case DensityKind::General:
            return singular_integral(general_, j - 2, n - j);
    }
    return 0.0;
}

double LambdaMeasure::total_mass() const {
    switch (kind_) {
        case DensityKind::None: return atom_;
        case DensityKind::BetaPaper:
            return atom_ + scale_ * numeric::beta(2.0 - alpha_, alpha_);
        case DensityKind::UniformScaled: return atom_ + scale_;
        case DensityKind::General:
            return atom_ + singular_integral(general_, 0, 0);
    }
    return atom_;
}

std::string LambdaMeasure::describe() const {
    char buf[96];
    switch (kind_) {
        case DensityKind::None:
            std::snprintf(buf, sizeof buf, "kingman(a=%g)", atom_);
            return buf;
        case DensityKind::BetaPaper:
            std::snprintf(buf, sizeof buf, "%sbeta(alpha=%g,scale=%g)",
                          atom_ > 0.0 ? "kingman+" : "", alpha_, scale_);
            return buf;
        case DensityKind::UniformScaled:
            std::snprintf(buf, sizeof buf, "%suniform(scale=%g)",
                          atom_ > 0.0 ? "kingman+" : "", scale_);
            return buf;
        case DensityKind::General:
            return atom_ > 0.0 ? "kingman+general" : "general";
    }
    return "?";
}

} // namespace coalhaus
