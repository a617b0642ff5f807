#include "doctest.h"

#include "coalhaus/rng.hpp"
#include "coalhaus/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace coalhaus;

namespace {
double uniform_cdf(double x) { return std::min(1.0, std::max(0.0, x)); }
} // namespace

TEST_CASE("one-sample KS statistic") {
    CHECK(ks_statistic({0.25, 0.75}, uniform_cdf) == doctest::Approx(0.25));
    // A single point at the median splits the CDF evenly.
    CHECK(ks_statistic({0.5}, uniform_cdf) == doctest::Approx(0.5));
    CHECK_THROWS_AS(ks_statistic({}, uniform_cdf), std::invalid_argument);

    // Sample from the reference: statistic around n^(-1/2) scale.
    Rng rng(stream_seed(601, 0));
    std::vector<double> u(10000);
    for (auto& x : u) x = rng.u01();
    CHECK(ks_statistic(u, uniform_cdf) < 0.03);
}

TEST_CASE("two-sample KS statistic") {
    CHECK(two_sample_ks({1.0, 2.0}, {3.0, 4.0}) == doctest::Approx(1.0));
    CHECK(two_sample_ks({1.0, 3.0}, {2.0, 4.0}) == doctest::Approx(0.5));
    CHECK(two_sample_ks({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == doctest::Approx(0.0));
    // Ties across samples are handled by the plain statistic.
    CHECK(two_sample_ks({1.0, 1.0, 2.0}, {1.0, 2.0, 2.0}) ==
          doctest::Approx(1.0 / 3.0));
}

TEST_CASE("chi-square statistics") {
    CHECK(chi_square_gof({25, 75}, {0.25, 0.75}) == doctest::Approx(0.0));
    CHECK(chi_square_gof({30, 20, 50}, {0.25, 0.25, 0.5}) == doctest::Approx(2.0));

    CHECK(chi_square_homogeneity({10, 5, 3}, {10, 5, 3}) == doctest::Approx(0.0));
    CHECK(chi_square_homogeneity({10, 0}, {0, 10}) == doctest::Approx(20.0));
    // Empty columns are dropped, not divided by.
    const double with_gap = chi_square_homogeneity({5, 0, 5}, {5, 0, 5});
    CHECK(std::isfinite(with_gap));
    CHECK(with_gap == doctest::Approx(0.0));
}

TEST_CASE("poisson rate z statistic") {
    CHECK(poisson_rate_test(100, 100.0, 1.0) == doctest::Approx(0.0));
    CHECK(poisson_rate_test(110, 10.0, 10.0) == doctest::Approx(1.0));
    CHECK(poisson_rate_test(90, 10.0, 10.0) == doctest::Approx(-1.0));
}

TEST_CASE("fixed critical values") {
    CHECK(chi_square_threshold(1, 1e-3) ==
          doctest::Approx(10.827566170662733).epsilon(1e-8));
    CHECK(chi_square_threshold(4, 1e-3) ==
          doctest::Approx(18.466826952903).epsilon(1e-6));
    CHECK(ks_threshold_asymptotic(10000, 1e-3) ==
          doctest::Approx(std::sqrt(-std::log(5e-4) / 2.0) / 100.0).epsilon(1e-12));
}

TEST_CASE("permutation-calibrated two-sample threshold") {
    Rng rng(stream_seed(602, 0));
    std::vector<double> a(500), b(500);
    for (auto& x : a) x = rng.u01();
    for (auto& x : b) x = rng.u01();

    const double t1 = ks_threshold_permutation(a, b, 1e-3, 2000, 99);
    const double t2 = ks_threshold_permutation(a, b, 1e-3, 2000, 99);
    CHECK(t1 == t2); // deterministic given the seed

    // Continuous data: the calibrated value sits near the asymptotic one,
    // c(1e-3) * sqrt((n+m)/(nm)) = 0.1233.
    CHECK(t1 > 0.09);
    CHECK(t1 < 0.16);

    // Different seed may move the value only slightly.
    const double t3 = ks_threshold_permutation(a, b, 1e-3, 2000, 100);
    CHECK(std::abs(t3 - t1) < 0.02);
}

TEST_CASE("report construction") {
    const auto pass = make_report("demo/pass", 0.5, 0.5, 10, 42, "note");
    CHECK(pass.pass);
    CHECK(pass.test == "demo/pass");
    CHECK(pass.statistic == doctest::Approx(0.5));
    CHECK(pass.threshold == doctest::Approx(0.5));
    CHECK(pass.n == 10);
    CHECK(pass.seed == 42);
    CHECK(pass.metadata == "note");

    const auto fail = make_report("demo/fail", 0.6, 0.5, 10, 42);
    CHECK_FALSE(fail.pass);
    CHECK(fail.metadata.empty());
}
