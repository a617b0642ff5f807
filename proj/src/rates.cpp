#include "coalhaus/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "coalhaus/numeric.hpp"

namespace coalhaus {

namespace {

/** C(N+x-k, x+1-j) / C(N+x, x+1) as a product of 2k small factors:
 *      prod_{i<k} 1/(N+x-i) * prod_{i<j} (x+1-i) * prod_{i<k-j} (N-1-i).
 *  Exact to a few ulp for every real N >= k, x >= j-1. The log-Gamma
 *  difference is not usable here: its absolute noise grows with x, and the
 *  tail integrals below evaluate x far beyond 1e9. */
double hyper_real(double N, double x, int k, int j) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r /= N + x - static_cast<double>(i);
    for (int i = 0; i < j; ++i) r *= x + 1.0 - static_cast<double>(i);
    for (int i = 0; i < k - j; ++i) r *= N - 1.0 - static_cast<double>(i);
    return r;
}

} // namespace

double level_selection_prob(double N, std::int64_t ell, int k, int j) {
    if (k < 1 || j < 0 || j > k) throw std::invalid_argument("level_selection_prob: bad k or j");
    if (ell < 1 || ell + 1 < j)
        throw std::invalid_argument("level_selection_prob: need ell >= max(1, j-1)");
    if (!(N >= static_cast<double>(k)))
        throw std::invalid_argument("level_selection_prob: need N >= k");
    return hyper_real(N, static_cast<double>(ell), k, j);
}

void RateQuery::validate() const {
    cfg.validate();
    if (k < 2 || j < 2 || j > k) throw std::invalid_argument("rate query: need 2 <= j <= k");
    if (!(n > 0.0)) throw std::invalid_argument("rate query: need n > 0");
    if (!(cfg.s_K() * n >= static_cast<double>(k)))
        throw std::invalid_argument("rate query: population s_K * n below sample size k");
}

namespace {

/** Real-argument extension of the pmf, exact at integer points. Used only by
 *  the integral tail; ExplicitFinite never reaches it (bounded support). */
double pmf_real(const OffspringLaw& law, double x) {
    switch (law.kind()) {
        case OffspringKind::Geometric: {
            const double p1 = law.pmf(1);
            const double q = 1.0 - p1;
            return p1 * std::exp((x - 1.0) * std::log(q));
        }
        case OffspringKind::StableTail: {
            const double a = law.alpha();
            // x^-a - (x+1)^-a without the cancellation that sets in once
            // x^-a itself is near the rounding floor of the difference.
            return -std::pow(x, -a) * std::expm1(-a * std::log1p(1.0 / x));
        }
        case OffspringKind::NeveuTail:
            return 1.0 / (x * (x + 1.0));
        case OffspringKind::ExplicitFinite:
            return 0.0;
    }
    return 0.0;
}

/** Inner sum sum_ell p_ell hyper(N, ell, k, j), the prelimit rate without
 *  its r_K N b prefactor. Bounded by 1 (hyper is a probability). */
double inner_sum(const RateQuery& q, std::int64_t cap) {
    const OffspringLaw& law = q.cfg.law;
    const double N = q.cfg.s_K() * q.n;
    const int k = q.k, j = q.j;
    const std::int64_t ell0 = std::max<std::int64_t>(1, j - 1);

    double h = level_selection_prob(N, ell0, k, j);
    double sum = 0.0;
    std::int64_t ell = ell0;
    while (true) {
        sum += law.pmf(ell) * h;
        if (ell >= law.max_support()) return sum;
        if (law.survival(ell + 1) < 1e-10 * sum) return sum;
        if (ell >= cap) break;
        // hyper(ell+1) / hyper(ell), from the factorial shift in both binomials
        const double le = static_cast<double>(ell);
        h *= (le + 2.0) / (le + 2.0 - j) * (N + le + 1.0 - k) / (N + le + 1.0);
        ++ell;
    }

    // Euler-Maclaurin completion from a = cap + 1: the closed-form survival
    // bound shrinks too slowly for the heavy tails at large K, so the sum is
    // capped and the remainder taken as integral + f(a)/2 - f'(a)/12.
    const double a = static_cast<double>(ell) + 1.0;
    auto f = [&](double x) { return pmf_real(law, x) * hyper_real(N, x, k, j); };
    // x = a / t^2 maps [a, inf) onto (0, 1]. The square keeps the integrand
    // continuous at t = 0: with x = a / t it tends to the constant pmf tail
    // exponent when j = k, and that jump forces the quadrature to max depth.
    auto g = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double x = a / (t * t);
        return f(x) * 2.0 * a / (t * t * t);
    };
    // The remainder is bounded by survival(a), so the tolerance is keyed to
    // that bound as well: when almost all mass sits beyond the cap (heavy
    // tails with s_K n large) the partial sum alone would demand a relative
    // accuracy far below what double-precision quadrature can certify.
    const double tol = std::max(1e-24, 1e-12 * std::max(sum, law.survival(ell + 1)));
    sum += numeric::integrate(g, 0.0, 1.0, tol);
    sum += 0.5 * f(a);
    sum -= (f(a + 1.0) - f(a - 1.0)) / 2.0 / 12.0;
    return sum;
}

} // namespace

double rate_prelimit(const RateQuery& q) {
    q.validate();
    const double prefactor = q.cfg.r_K() * q.cfg.s_K() * q.n * q.cfg.b;
    return prefactor * inner_sum(q, 100'000);
}

double rate_prelimit_bruteforce(const RateQuery& q, std::int64_t ell_max) {
    q.validate();
    const OffspringLaw& law = q.cfg.law;
    const double N = q.cfg.s_K() * q.n;
    double sum = 0.0;
    // Independent evaluation path: every hyper factor from scratch.
    for (std::int64_t ell = std::max<std::int64_t>(1, q.j - 1);
         ell <= std::min(ell_max, law.max_support()); ++ell)
        sum += law.pmf(ell) * level_selection_prob(N, ell, q.k, q.j);
    return q.cfg.r_K() * q.cfg.s_K() * q.n * q.cfg.b * sum;
}

double rate_limit(const RateQuery& q) {
    q.validate();
    const double b = q.cfg.b;
    switch (q.cfg.regime()) {
        case Regime::FiniteVariance: {
            if (q.j != 2) return 0.0;
            const double m = q.cfg.law.mean();
            const double m2 = q.cfg.law.second_moment();
            return b * (m + m2) / q.n;
        }
        case Regime::Stable: {
            const double alpha = q.cfg.law.alpha();
            const double p0 = q.cfg.law.tail_constant();
            return p0 * b * std::pow(q.n, 1.0 - alpha) *
                   numeric::beta(q.j - alpha, q.k - q.j + alpha);
        }
        case Regime::Neveu:
            return b * q.cfg.law.tail_constant() *
                   numeric::beta(static_cast<double>(q.j - 1),
                                 static_cast<double>(q.k - q.j + 1));
    }
    return 0.0;
}

ConvergenceReport convergence_report(const RegimeConfig& base, int k,
                                     const std::vector<double>& K_list,
                                     const std::vector<double>& n_grid) {
    if (k < 2) throw std::invalid_argument("convergence_report: need k >= 2");
    if (K_list.empty() || n_grid.empty())
        throw std::invalid_argument("convergence_report: empty K list or n grid");
    ConvergenceReport report;
    report.k = k;
    report.n_grid = n_grid;
    for (double K : K_list) {
        ConvergenceRow row;
        row.K = K;
        row.sup_by_j.assign(static_cast<std::size_t>(k) + 1, 0.0);
        for (int j = 2; j <= k; ++j) {
            for (double n : n_grid) {
                RateQuery q{base, k, j, n};
                q.cfg.K = K;
                const double gap = std::abs(rate_prelimit(q) - rate_limit(q));
                row.sup_by_j[static_cast<std::size_t>(j)] =
                    std::max(row.sup_by_j[static_cast<std::size_t>(j)], gap);
            }
            row.sup_gap = std::max(row.sup_gap, row.sup_by_j[static_cast<std::size_t>(j)]);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace coalhaus
