#include "ionpnr/fluorescence.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ionpnr/errors.h"
#include "ionpnr/poisson.h"

namespace ionpnr {

namespace {

void require_time(double t) {
    if (!(t >= 0.0) || std::isinf(t)) {
        throw InvalidParameter("collection time must be finite and >= 0, got " + std::to_string(t));
    }
}

void require_count(std::int64_t n, const char *name) {
    if (n < 0) throw InvalidParameter(std::string(name) + " must be >= 0");
}

}  // namespace

void FluorescenceModel::validate() const {
    if (!(rate_per_ion >= 0.0) || std::isinf(rate_per_ion)) throw InvalidParameter("rate_per_ion must be >= 0");
    if (n_ions < 0) throw InvalidParameter("n_ions must be >= 0");
    if (!(tau_d > 0.0)) throw InvalidParameter("tau_d must be > 0");
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidParameter("eta must lie in (0, 1], got " + std::to_string(eta));
    if (n_residual < 0 || n_residual > n_ions) throw InvalidParameter("n_residual must lie in [0, n_ions]");
}

FluorescenceModel FluorescenceModel::from_detector(const DetectorParams &p, std::optional<double> eta,
                                                   std::int64_t n_residual) {
    FluorescenceModel m;
    m.rate_per_ion = photon_rate_per_ion(p);
    m.n_ions = p.n_ions;
    m.tau_d = p.tau_d;
    m.eta = eta.value_or(conversion_efficiency(cooperativity(p)));
    m.n_residual = n_residual;
    m.validate();
    return m;
}

FluorescenceModel FluorescenceModel::with_eta(double new_eta) const {
    FluorescenceModel m = *this;
    m.eta = new_eta;
    m.validate();
    return m;
}

double mu_in(const FluorescenceModel &m, std::int64_t n_converted, double t) {
    require_time(t);
    require_count(n_converted, "n_converted");
    return static_cast<double>(n_converted) * m.rate_per_ion * t;
}

double mu_decay(const FluorescenceModel &m, double t) {
    require_time(t);
    const double x = t / m.tau_d;
    return static_cast<double>(m.n_ions) * m.rate_per_ion * m.tau_d * exp_decay_excess(x);
}

double mu_residual(const FluorescenceModel &m, double t) {
    require_time(t);
    return static_cast<double>(m.n_residual) * m.rate_per_ion * t;
}

double total_mean(const FluorescenceModel &m, std::int64_t n_converted, double t) {
    return mu_in(m, n_converted, t) + mu_decay(m, t) + mu_residual(m, t);
}

double count_pmf(const FluorescenceModel &m, std::int64_t n_converted, double t, std::int64_t n_fl) {
    require_count(n_fl, "n_fl");
    return poisson_pmf(n_fl, total_mean(m, n_converted, t));
}

double count_pmf_mixture(const FluorescenceModel &m, std::int64_t n_in, double t, std::int64_t n_fl) {
    require_count(n_in, "n_in");
    require_count(n_fl, "n_fl");
    require_time(t);
    if (m.eta == 1.0) return count_pmf(m, n_in, t, n_fl);
    const double background = mu_decay(m, t) + mu_residual(m, t);
    double p = 0.0;
    for (std::int64_t k = 0; k <= n_in; ++k) {
        p += binomial_pmf(k, n_in, m.eta) * poisson_pmf(n_fl, mu_in(m, k, t) + background);
    }
    return p;
}

double count_cdf(const FluorescenceModel &m, std::int64_t n_in, double t, std::int64_t n_fl) {
    require_count(n_fl, "n_fl");
    const std::int64_t upto = std::min(n_fl, mixture_cutoff(m, n_in, t));
    double c = 0.0;
    for (std::int64_t n = 0; n <= upto; ++n) c += count_pmf_mixture(m, n_in, t, n);
    return std::min(c, 1.0);
}

double mixture_mean(const FluorescenceModel &m, std::int64_t n_in, double t) {
    return m.eta * mu_in(m, n_in, t) + mu_decay(m, t) + mu_residual(m, t);
}

std::int64_t mixture_cutoff(const FluorescenceModel &m, std::int64_t n_in, double t) {
    return tail_cutoff(total_mean(m, n_in, t));
}

CountDistribution count_distribution(const FluorescenceModel &m, std::int64_t n_in, double t,
                                     std::optional<std::int64_t> upto) {
    require_count(n_in, "n_in");
    const std::int64_t last = upto.value_or(mixture_cutoff(m, n_in, t));
    require_count(last, "upto");

    CountDistribution d;
    d.mean = mixture_mean(m, n_in, t);
    d.pmf.assign(static_cast<std::size_t>(last) + 1, 0.0);

    const double background = mu_decay(m, t) + mu_residual(m, t);
    for (std::int64_t k = 0; k <= n_in; ++k) {
        const double weight = m.eta == 1.0 ? (k == n_in ? 1.0 : 0.0) : binomial_pmf(k, n_in, m.eta);
        if (weight == 0.0) continue;
        const double mean = mu_in(m, k, t) + background;
        for (std::int64_t n = 0; n <= last; ++n) {
            d.pmf[static_cast<std::size_t>(n)] += weight * poisson_pmf(n, mean);
        }
    }
    return d;
}

}  // namespace ionpnr
