#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace coalhaus::numeric {

inline double log_gamma(double x) { return std::lgamma(x); }

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double beta(double a, double b) { return std::exp(log_beta(a, b)); }

/** log C(x, m) for real x and real m >= 0; requires x - m + 1 > 0. */
double log_binomial_real(double x, double m);

/** Exact C(n, m) in double arithmetic for small integer arguments. */
double binomial_small(int n, int m);

/** Riemann zeta on (1, 2]: direct summation to l = 1e6 plus Euler-Maclaurin
 *  integral tail; absolute error below 1e-10 on the whole interval. */
double zeta_sum(double alpha);

/** Adaptive Simpson quadrature with absolute tolerance. */
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

/** Regularized lower incomplete gamma P(a, x). */
double reg_gamma_p(double a, double x);

/** Quantile of the chi-square distribution with df degrees of freedom. */
double chi_square_quantile(double p, double df);

} // namespace coalhaus::numeric
