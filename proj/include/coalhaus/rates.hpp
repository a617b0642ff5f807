#pragma once

#include <cstdint>
#include <vector>

#include "coalhaus/regime.hpp"

namespace coalhaus {

/** Probability that a uniform (ell+1)-subset J of [N+ell] satisfies
 *  J intersect [k] = a fixed j-subset of [k]:
 *      C(N+ell-k, ell+1-j) / C(N+ell, ell+1).
 *  N may be a non-integer real; the ratio is evaluated as a product of 2k
 *  factors, exact to a few ulp at any magnitude. */
double level_selection_prob(double N, std::int64_t ell, int k, int j);

/** One merger-rate evaluation point. K, the law and b live in cfg; n is the
 *  rescaled population size at which the rate is read off. */
struct RateQuery {
    RegimeConfig cfg;
    int k = 2;
    int j = 2;
    double n = 1.0;

    void validate() const;
};

/** Prelimit rate at which a fixed j-subset of the lowest k levels is hit by
 *  one birth event when the rescaled size is n:
 *      R_j(K,n) = r_K * N * b * sum_{ell >= j-1} p_ell * hyper(N, ell, k, j),
 *  with N = s_K * n and hyper = level_selection_prob. The sum runs until the
 *  closed-form survival bound drops below 1e-10 of the partial sum; for the
 *  heavy-tail families the summation is capped at ell = 1e5 and finished
 *  with an Euler-Maclaurin integral of the real-argument summand, which
 *  keeps the truncation error far below every tolerance used downstream. */
double rate_prelimit(const RateQuery& q);

/** Direct summation to ell_max with no tail correction; slow reference. */
double rate_prelimit_bruteforce(const RateQuery& q, std::int64_t ell_max);

/** Limits of R_j(K,n) as K grows, at fixed k, j, n:
 *  finite variance  b (m + m2) / n for j = 2, else 0;
 *  stable           (p0 b / n^(alpha-1)) * B(j - alpha, k - j + alpha);
 *  Neveu            b p0 * B(j-1, k-j+1).  (K in q.cfg is ignored.) */
double rate_limit(const RateQuery& q);

struct ConvergenceRow {
    double K = 0.0;
    double sup_gap = 0.0;            // over the n-grid and j = 2..k
    std::vector<double> sup_by_j;    // index j, entries 2..k
};

struct ConvergenceReport {
    int k = 0;
    std::vector<double> n_grid;
    std::vector<ConvergenceRow> rows; // one per K, in input order
};

/** sup_{n in grid, 2 <= j <= k} |R_j(K,n) - R_j(n)| for each K. The K field
 *  of base is replaced by each list entry. */
ConvergenceReport convergence_report(const RegimeConfig& base, int k,
                                     const std::vector<double>& K_list,
                                     const std::vector<double>& n_grid);

} // namespace coalhaus
