#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ionpnr/detector.h"

namespace ionpnr {

/// Counting statistics of the fluorescence readout stage.
///
/// Ions that absorbed a probe photon (and any residual ions left outside the
/// shelving state by imperfect pumping) fluoresce at `rate_per_ion` for the
/// whole collection window. The N shelved ions each decay with lifetime
/// `tau_d` and fluoresce from their decay time onwards, which adds the mean
/// background mu_decay(t).
struct FluorescenceModel {
    double rate_per_ion = 0.0;     ///< R, detected counts / s
    std::int64_t n_ions = 0;       ///< N shelved ions
    double tau_d = 1.0;            ///< shelving-state lifetime, s
    double eta = 1.0;              ///< photon -> excitation conversion probability
    std::int64_t n_residual = 0;   ///< ions fluorescing from t = 0 regardless of input

    void validate() const;

    /// Builds the model from device parameters. `eta` defaults to C/(1+C).
    static FluorescenceModel from_detector(const DetectorParams &p, std::optional<double> eta = std::nullopt,
                                           std::int64_t n_residual = 0);

    FluorescenceModel with_eta(double new_eta) const;

    bool operator==(const FluorescenceModel &) const = default;
};

/// Tabulated count distribution, pmf[n] for n = 0 .. pmf.size()-1.
struct CountDistribution {
    double mean = 0.0;
    std::vector<double> pmf;

    double at(std::int64_t n) const {
        return n >= 0 && static_cast<std::size_t>(n) < pmf.size() ? pmf[static_cast<std::size_t>(n)] : 0.0;
    }
};

/// n_converted R t.
double mu_in(const FluorescenceModel &m, std::int64_t n_converted, double t);

/// N R tau_d [(e^{-t/tau_d} - 1) + t/tau_d].
double mu_decay(const FluorescenceModel &m, double t);

/// n_residual R t.
double mu_residual(const FluorescenceModel &m, double t);

/// Poisson mean when exactly `n_converted` excitations were stored.
double total_mean(const FluorescenceModel &m, std::int64_t n_converted, double t);

/// Po[n_fl; mu_in + mu_decay + mu_residual].
double count_pmf(const FluorescenceModel &m, std::int64_t n_converted, double t, std::int64_t n_fl);

/// Sum over k of Binom(k; n_in, eta) count_pmf(k). Equals count_pmf when eta = 1.
double count_pmf_mixture(const FluorescenceModel &m, std::int64_t n_in, double t, std::int64_t n_fl);

/// P(N_fl <= n_fl) of the mixture. Terms past the tail cutoff are below
/// 1e-12 and are not summed.
double count_cdf(const FluorescenceModel &m, std::int64_t n_in, double t, std::int64_t n_fl);

/// eta n_in R t + mu_decay + mu_residual.
double mixture_mean(const FluorescenceModel &m, std::int64_t n_in, double t);

/// Summation bound for the mixture: tail_cutoff of the largest component mean.
std::int64_t mixture_cutoff(const FluorescenceModel &m, std::int64_t n_in, double t);

/// Mixture pmf tabulated on [0, upto], or [0, mixture_cutoff] when omitted.
CountDistribution count_distribution(const FluorescenceModel &m, std::int64_t n_in, double t,
                                     std::optional<std::int64_t> upto = std::nullopt);

}  // namespace ionpnr
