#pragma once

#include <cstdint>

namespace ionpnr {

/// ln(n!) for n >= 0. Tabulated for small n, lgamma-based above.
double log_factorial(std::int64_t n);

/// ln Po[n; mean]. Returns -inf where the probability is exactly zero.
double poisson_log_pmf(std::int64_t n, double mean);

/// Po[n; mean] = mean^n e^{-mean} / n!, evaluated in log space so that means
/// of order 10^5 neither overflow nor underflow prematurely.
double poisson_pmf(std::int64_t n, double mean);

/// Binom(k; n, p).
double binomial_pmf(std::int64_t k, std::int64_t n, double p);

/// e^{-x} - 1 + x for x >= 0 without cancellation at small x.
double exp_decay_excess(double x);

/// Upper summation bound mean + 12 sqrt(mean) + 30, past which the Poisson
/// tail mass is below 1e-12.
std::int64_t tail_cutoff(double mean);

}  // namespace ionpnr
