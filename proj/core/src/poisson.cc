#include "ionpnr/poisson.h"

#include <array>
#include <cmath>
#include <limits>

#include "ionpnr/errors.h"

namespace ionpnr {

namespace {

constexpr std::int64_t kTableSize = 1024;

// std::lgamma writes the global signgam on glibc, so values shared between
// Monte-Carlo threads are tabulated once up front.
const std::array<double, kTableSize> &log_factorial_table() {
    static const std::array<double, kTableSize> table = [] {
        std::array<double, kTableSize> t{};
        t[0] = 0.0;
        for (std::int64_t i = 1; i < kTableSize; ++i) {
            t[i] = t[i - 1] + std::log(static_cast<double>(i));
        }
        return t;
    }();
    return table;
}

}  // namespace

double log_factorial(std::int64_t n) {
    if (n < 0) throw InvalidParameter("log_factorial of negative argument");
    if (n < kTableSize) return log_factorial_table()[static_cast<std::size_t>(n)];
    int sign = 0;
    return ::lgamma_r(static_cast<double>(n) + 1.0, &sign);
}

double poisson_log_pmf(std::int64_t n, double mean) {
    if (!(mean >= 0.0) || std::isinf(mean)) throw InvalidParameter("Poisson mean must be finite and >= 0");
    if (n < 0) return -std::numeric_limits<double>::infinity();
    if (mean == 0.0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return static_cast<double>(n) * std::log(mean) - mean - log_factorial(n);
}

double poisson_pmf(std::int64_t n, double mean) { return std::exp(poisson_log_pmf(n, mean)); }

double binomial_pmf(std::int64_t k, std::int64_t n, double p) {
    if (n < 0) throw InvalidParameter("binomial trial count must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("binomial probability must lie in [0, 1]");
    if (k < 0 || k > n) return 0.0;
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    const double log_choose = log_factorial(n) - log_factorial(k) - log_factorial(n - k);
    return std::exp(log_choose + static_cast<double>(k) * std::log(p) +
                    static_cast<double>(n - k) * std::log1p(-p));
}

double exp_decay_excess(double x) {
    if (x < 0.0 || std::isnan(x)) throw InvalidParameter("exp_decay_excess requires x >= 0");
    if (x < 1e-4) {
        // x²/2 - x³/6 + x⁴/24 - x⁵/120
        return x * x * (0.5 - x * (1.0 / 6.0 - x * (1.0 / 24.0 - x / 120.0)));
    }
    return std::expm1(-x) + x;
}

std::int64_t tail_cutoff(double mean) {
    if (!(mean >= 0.0) || std::isinf(mean)) throw InvalidParameter("tail_cutoff mean must be finite and >= 0");
    return static_cast<std::int64_t>(std::ceil(mean + 12.0 * std::sqrt(mean) + 30.0));
}

}  // namespace ionpnr
