#include "coalhaus/numeric.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

namespace coalhaus::numeric {

double log_binomial_real(double x, double m) {
    if (m < 0.0) throw std::invalid_argument("log_binomial_real: m < 0");
    if (x - m + 1.0 <= 0.0)
        throw std::invalid_argument("log_binomial_real: x - m + 1 must be positive");
    return std::lgamma(x + 1.0) - std::lgamma(m + 1.0) - std::lgamma(x - m + 1.0);
}

double binomial_small(int n, int m) {
    if (m < 0 || m > n) return 0.0;
    m = std::min(m, n - m);
    double r = 1.0;
    for (int i = 1; i <= m; ++i) r = r * static_cast<double>(n - m + i) / static_cast<double>(i);
    return r;
}

double zeta_sum(double alpha) {
    if (!(alpha > 1.0))
        throw std::invalid_argument("zeta_sum: alpha must exceed 1");
    constexpr std::int64_t M = 1'000'000;
    double s = 0.0;
    // Smallest terms first to limit rounding accumulation.
    for (std::int64_t l = M; l >= 1; --l)
        s += std::pow(static_cast<double>(l), -alpha);
    const double a = static_cast<double>(M) + 1.0;
    // Euler-Maclaurin tail from l = M+1: integral + f(a)/2 - f'(a)/12.
    s += std::pow(a, 1.0 - alpha) / (alpha - 1.0)
       + 0.5 * std::pow(a, -alpha)
       + alpha * std::pow(a, -alpha - 1.0) / 12.0;
    return s;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double integrate_rec(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm, double whole,
                     double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return integrate_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
         + integrate_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    return integrate_rec(f, a, fa, b, fb, m, fm, whole, abs_tol, 48);
}

namespace {

// Series expansion of P(a, x), reliable for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x), reliable for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double reg_gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0)
        throw std::invalid_argument("reg_gamma_p: domain");
    if (x == 0.0) return 0.0;
    return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double chi_square_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0) || !(df > 0.0))
        throw std::invalid_argument("chi_square_quantile: domain");
    const double a = 0.5 * df;
    auto cdf = [&](double x) { return reg_gamma_p(a, 0.5 * x); };
    double lo = 0.0, hi = df;
    while (cdf(hi) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace coalhaus::numeric
