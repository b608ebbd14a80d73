#include "ionpnr/fluorescence.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "ionpnr/errors.h"
#include "ionpnr/poisson.h"
#include "oracles.h"

using namespace ionpnr;

namespace {

FluorescenceModel default_model(double eta = 1.0) {
    return FluorescenceModel::from_detector(DetectorParams{}, eta);
}

constexpr double kT150 = 150e-6;

}  // namespace

TEST(Fluorescence, from_detector_uses_derived_efficiency_by_default) {
    const auto m = FluorescenceModel::from_detector(DetectorParams{});
    EXPECT_NEAR(m.eta, 0.942754539, 1e-9);
    EXPECT_NEAR(m.rate_per_ion, 260123.8717, 1e-3);
    EXPECT_EQ(m.n_ions, 1500);
}

TEST(Fluorescence, model_validation) {
    auto m = default_model();
    m.eta = 0.0;
    EXPECT_THROW(m.validate(), InvalidParameter);
    m = default_model();
    m.n_residual = m.n_ions + 1;
    EXPECT_THROW(m.validate(), InvalidParameter);
    EXPECT_THROW(default_model().with_eta(1.1), InvalidParameter);
}

TEST(Fluorescence, mu_in) {
    const auto m = default_model();
    EXPECT_NEAR(mu_in(m, 1, kT150), 39.0, 0.02);
    EXPECT_NEAR(mu_in(m, 3, kT150), 117.0, 0.06);
    EXPECT_EQ(mu_in(m, 3, kT150), 3.0 * mu_in(m, 1, kT150));
    EXPECT_EQ(mu_in(m, 0, 1.0), 0.0);
    EXPECT_THROW(mu_in(m, 1, -1e-6), InvalidParameter);
}

TEST(Fluorescence, mu_decay_matches_quadrature) {
    const auto m = default_model();
    // Frozen from a 40-digit quadrature of N(1 - e^{-s/τ})R over [0, t].
    EXPECT_NEAR(mu_decay(m, 10e-6), 0.016964551156737203, 1e-9 * 0.017);
    EXPECT_NEAR(mu_decay(m, kT150), 3.8168691214764325, 1e-9 * 3.82);
    EXPECT_NEAR(mu_decay(m, 1e-3), 169.59684122714135, 1e-9 * 169.6);
    for (double t : {1e-7, 1e-6, 37e-6, 430e-6, 2e-3, 0.5}) {
        const double ref = ionpnr::testing::decay_background_quadrature(m.rate_per_ion, m.n_ions, m.tau_d, t);
        EXPECT_NEAR(mu_decay(m, t), ref, 1e-9 * ref) << "t=" << t;
    }
    EXPECT_EQ(mu_decay(m, 0.0), 0.0);
    EXPECT_THROW(mu_decay(m, -1.0), InvalidParameter);
}

TEST(Fluorescence, mu_decay_quadratic_leading_order) {
    const auto m = default_model();
    for (double t : {1e-6, 10e-6, 150e-6}) {
        const double leading = static_cast<double>(m.n_ions) * m.rate_per_ion * t * t / (2.0 * m.tau_d);
        EXPECT_NEAR(mu_decay(m, t), leading, 1e-3 * leading);
    }
}

TEST(Fluorescence, mu_decay_is_positive_increasing_convex) {
    const auto m = default_model();
    std::vector<double> values;
    for (int i = 0; i <= 200; ++i) values.push_back(mu_decay(m, i * 5e-6));
    for (std::size_t i = 1; i < values.size(); ++i) {
        EXPECT_GE(values[i], 0.0);
        EXPECT_GT(values[i], values[i - 1]);
        if (i + 1 < values.size()) EXPECT_GT(values[i + 1] - values[i], values[i] - values[i - 1]);
    }
}

TEST(Fluorescence, count_pmf_degenerate_and_mode) {
    FluorescenceModel dark = default_model();
    dark.rate_per_ion = 0.0;
    EXPECT_EQ(count_pmf(dark, 1, kT150, 0), 1.0);
    EXPECT_EQ(count_pmf(dark, 1, kT150, 3), 0.0);

    const auto m = default_model();
    EXPECT_NEAR(total_mean(m, 1, kT150), 42.8354, 1e-4);
    std::int64_t mode = 0;
    for (std::int64_t n = 0; n < 200; ++n) {
        if (count_pmf(m, 1, kT150, n) > count_pmf(m, 1, kT150, mode)) mode = n;
    }
    EXPECT_EQ(mode, 42);
}

TEST(Fluorescence, decay_background_is_a_pure_mean_shift) {
    // Σ_k Po[k; μ_in] Po[n-k; μ_decay] = Po[n; μ_in + μ_decay]
    const auto m = default_model();
    const double a = mu_in(m, 1, kT150);
    const double b = mu_decay(m, kT150);
    const auto pa = ionpnr::testing::poisson_by_recurrence(a, 200);
    const auto pb = ionpnr::testing::poisson_by_recurrence(b, 200);
    for (std::int64_t n = 0; n <= 200; ++n) {
        double conv = 0.0;
        for (std::int64_t k = 0; k <= n; ++k) conv += pa[k] * pb[n - k];
        EXPECT_NEAR(count_pmf(m, 1, kT150, n), conv, 1e-12) << "n=" << n;
    }
}

TEST(Fluorescence, mixture_reduces_to_pure_poisson_at_unit_efficiency) {
    const auto m = default_model(1.0);
    for (std::int64_t n_in : {0, 1, 3, 10}) {
        for (std::int64_t n = 0; n < 300; n += 7) {
            EXPECT_NEAR(count_pmf_mixture(m, n_in, kT150, n), count_pmf(m, n_in, kT150, n), 1e-15);
        }
    }
}

TEST(Fluorescence, mixture_component_weights) {
    // Long collection separates the components; the k = 0 lobe then holds
    // exactly Binom(0; 1, η) of the mass.
    const auto m = default_model(0.93);
    const double t = 2e-3;
    const double split = 0.5 * (total_mean(m, 0, t) + total_mean(m, 1, t));
    EXPECT_NEAR(count_cdf(m, 1, t, static_cast<std::int64_t>(split)), 0.07, 1e-6);

    const auto m3 = default_model(0.93);
    const double split3 = 0.5 * (total_mean(m3, 2, t) + total_mean(m3, 3, t));
    EXPECT_NEAR(1.0 - count_cdf(m3, 3, t, static_cast<std::int64_t>(split3)), 0.804357, 1e-6);
}

TEST(Fluorescence, mixture_normalization_and_mean_identity) {
    for (double eta : {0.5, 0.93, 1.0}) {
        for (std::int64_t residual : {0, 5}) {
            FluorescenceModel m = default_model(eta);
            m.n_residual = residual;
            for (std::int64_t n_in : {0, 1, 3, 10}) {
                for (double t : {10e-6, 150e-6, 1e-3}) {
                    const CountDistribution d = count_distribution(m, n_in, t);
                    double mass = 0.0;
                    double first = 0.0;
                    for (std::size_t n = 0; n < d.pmf.size(); ++n) {
                        mass += d.pmf[n];
                        first += static_cast<double>(n) * d.pmf[n];
                    }
                    const double expected = eta * static_cast<double>(n_in) * m.rate_per_ion * t + mu_decay(m, t) +
                                            static_cast<double>(residual) * m.rate_per_ion * t;
                    EXPECT_NEAR(mass, 1.0, 1e-9);
                    EXPECT_NEAR(first, expected, 1e-6 * expected);
                    EXPECT_NEAR(d.mean, expected, 1e-12 * expected);
                }
            }
        }
    }
}

TEST(Fluorescence, cdf_properties) {
    const auto m = default_model(0.93);
    double previous = 0.0;
    for (std::int64_t n = 0; n <= 150; ++n) {
        const double c = count_cdf(m, 3, kT150, n);
        EXPECT_GE(c, previous);
        if (n > 0) EXPECT_NEAR(c - previous, count_pmf_mixture(m, 3, kT150, n), 1e-12);
        previous = c;
    }
    const double mean = total_mean(m, 3, kT150);
    EXPECT_GE(count_cdf(m, 3, kT150, static_cast<std::int64_t>(mean + 12 * std::sqrt(mean) + 30)), 1.0 - 1e-9);

    const auto ideal = default_model(1.0);
    EXPECT_NEAR(count_cdf(ideal, 1, kT150, 42), 0.489727792887, 1e-9);
}

TEST(Fluorescence, residual_ions_add_a_linear_offset) {
    FluorescenceModel m = default_model();
    m.n_residual = 4;
    EXPECT_NEAR(total_mean(m, 1, kT150) - total_mean(default_model(), 1, kT150), 4 * m.rate_per_ion * kT150, 1e-9);
}

TEST(Fluorescence, zero_time_is_a_point_mass) {
    const auto d = count_distribution(default_model(0.93), 3, 0.0);
    EXPECT_EQ(d.at(0), 1.0);
    EXPECT_EQ(d.at(1), 0.0);
}
