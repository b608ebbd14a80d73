#include "ionpnr/detector.h"

#include <cmath>
#include <string>

#include "ionpnr/errors.h"

namespace ionpnr {

namespace {

void require_positive(double v, const char *name) {
    if (!(std::isfinite(v) && v > 0.0)) {
        throw InvalidParameter(std::string(name) + " must be finite and > 0, got " + std::to_string(v));
    }
}

}  // namespace

void DetectorParams::validate() const {
    require_positive(g, "g");
    if (n_ions < 1) {
        throw InvalidParameter("n_ions must be >= 1, got " + std::to_string(n_ions));
    }
    require_positive(kappa, "kappa");
    require_positive(gamma, "gamma");
    require_positive(tau_d, "tau_d");
    require_positive(gamma_ps, "gamma_ps");
    if (!(solid_angle_fraction > 0.0 && solid_angle_fraction <= 1.0)) {
        throw InvalidParameter("solid_angle_fraction must lie in (0, 1], got " +
                               std::to_string(solid_angle_fraction));
    }
    // A blind detector (η_D = 0) is accepted; it simply yields R = 0.
    if (!(eta_detector >= 0.0 && eta_detector <= 1.0)) {
        throw InvalidParameter("eta_detector must lie in [0, 1], got " + std::to_string(eta_detector));
    }
    if (finesse && !(std::isfinite(*finesse) && *finesse > 0.0)) {
        throw InvalidParameter("finesse must be > 0 when given");
    }
}

double cooperativity(const DetectorParams &p) {
    p.validate();
    return p.g * p.g * static_cast<double>(p.n_ions) / (p.kappa * p.gamma);
}

double conversion_efficiency(double cooperativity) {
    if (!(std::isfinite(cooperativity) && cooperativity >= 0.0)) {
        throw InvalidParameter("cooperativity must be finite and >= 0, got " + std::to_string(cooperativity));
    }
    return cooperativity / (1.0 + cooperativity);
}

double photon_rate_per_ion(const DetectorParams &p) {
    p.validate();
    const double solid_angle_sr = 4.0 * std::numbers::pi * p.solid_angle_fraction;
    return p.gamma_ps * solid_angle_sr * p.eta_detector / (16.0 * std::numbers::pi);
}

double min_pulse_duration(double cooperativity, double gamma) {
    if (!(cooperativity > 0.0) || std::isnan(cooperativity)) {
        throw InvalidParameter("cooperativity must be > 0");
    }
    require_positive(gamma, "gamma");
    if (std::isinf(cooperativity)) return 0.0;
    return 50.0 / (cooperativity * gamma);
}

double min_pulse_duration(const DetectorParams &p) { return min_pulse_duration(cooperativity(p), p.gamma); }

DerivedQuantities derive(const DetectorParams &p) {
    DerivedQuantities d;
    d.cooperativity = cooperativity(p);
    d.conversion_efficiency = conversion_efficiency(d.cooperativity);
    d.photon_rate_per_ion = photon_rate_per_ion(p);
    d.min_pulse_duration = min_pulse_duration(d.cooperativity, p.gamma);
    return d;
}

}  // namespace ionpnr
