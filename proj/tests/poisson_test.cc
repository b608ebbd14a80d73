#include "ionpnr/poisson.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "ionpnr/errors.h"
#include "oracles.h"

using namespace ionpnr;

TEST(Poisson, degenerate_mean) {
    EXPECT_EQ(poisson_pmf(0, 0.0), 1.0);
    EXPECT_EQ(poisson_pmf(1, 0.0), 0.0);
    EXPECT_EQ(poisson_pmf(50, 0.0), 0.0);
    EXPECT_EQ(poisson_pmf(-1, 3.0), 0.0);
    EXPECT_THROW(poisson_pmf(1, -1.0), InvalidParameter);
}

TEST(Poisson, log_space_matches_recurrence) {
    for (double mu : {0.3, 3.81, 42.8, 250.0, 600.0}) {
        const auto reference = ionpnr::testing::poisson_by_recurrence(mu, tail_cutoff(mu));
        for (std::size_t n = 0; n < reference.size(); ++n) {
            const double got = poisson_pmf(static_cast<std::int64_t>(n), mu);
            EXPECT_NEAR(got, reference[n], 5e-11 * reference[n]) << "mu=" << mu << " n=" << n;
        }
    }
}

TEST(Poisson, large_means_do_not_overflow) {
    const double mu = 1e5;
    const auto mode = static_cast<std::int64_t>(mu);
    const double p = poisson_pmf(mode, mu);
    EXPECT_TRUE(std::isfinite(p));
    // Normal approximation at the mode: 1 / sqrt(2π mu).
    EXPECT_NEAR(p, 1.0 / std::sqrt(2.0 * std::numbers::pi * mu), 1e-6);
}

TEST(Poisson, log_factorial_continuity_across_table_edge) {
    for (std::int64_t n : {1022, 1023, 1024, 1025}) {
        EXPECT_NEAR(log_factorial(n) - log_factorial(n - 1), std::log(static_cast<double>(n)), 1e-9);
    }
}

TEST(Poisson, binomial_pmf) {
    EXPECT_NEAR(binomial_pmf(0, 1, 0.93), 0.07, 1e-15);
    EXPECT_NEAR(binomial_pmf(3, 3, 0.93), 0.804357, 1e-12);
    EXPECT_EQ(binomial_pmf(0, 5, 0.0), 1.0);
    EXPECT_EQ(binomial_pmf(5, 5, 1.0), 1.0);
    EXPECT_EQ(binomial_pmf(4, 5, 1.0), 0.0);
    double total = 0.0;
    for (int k = 0; k <= 10; ++k) total += binomial_pmf(k, 10, 0.37);
    EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(Poisson, exp_decay_excess_is_stable_at_small_argument) {
    // Reference: alternating Taylor series summed in long double.
    auto reference = [](long double x) {
        long double term = x * x / 2.0L;
        long double sum = 0.0L;
        for (int k = 2; k < 40; ++k) {
            sum += term;
            term *= -x / (k + 1);
        }
        return static_cast<double>(sum);
    };
    for (double x : {1e-12, 1e-9, 1e-6, 1e-5, 9.9e-5}) {
        EXPECT_NEAR(exp_decay_excess(x), reference(x), 1e-14 * reference(x)) << x;
    }
    for (double x : {1e-4, 1.3e-4, 1e-3}) {
        EXPECT_NEAR(exp_decay_excess(x), reference(x), 1e-11 * reference(x)) << x;
    }
    for (long double x : {0.1L, 2.0L, 30.0L}) {
        const double closed = static_cast<double>(std::expm1(-x) + x);
        EXPECT_NEAR(exp_decay_excess(static_cast<double>(x)), closed, 1e-14 * closed) << x;
    }
    EXPECT_EQ(exp_decay_excess(0.0), 0.0);
    EXPECT_THROW(exp_decay_excess(-1.0), InvalidParameter);
}

TEST(Poisson, tail_cutoff_bounds_the_tail) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_mu(-2.0, 4.0);
    for (int i = 0; i < 50; ++i) {
        const double mu = std::pow(10.0, log_mu(rng));
        const std::int64_t cut = tail_cutoff(mu);
        double mass = 0.0;
        for (std::int64_t n = 0; n <= cut; ++n) mass += poisson_pmf(n, mu);
        EXPECT_NEAR(mass, 1.0, 1e-9) << "mu=" << mu;
    }
}
