#pragma once

#include <cstdint>
#include <numbers>
#include <optional>

namespace ionpnr {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Converts a frequency quoted as "2π × f MHz" into an angular rate in rad/s.
constexpr double angular_from_mhz(double f_mhz) { return kTwoPi * f_mhz * 1e6; }

/// Inverse of angular_from_mhz.
constexpr double mhz_from_angular(double rad_per_s) { return rad_per_s / (kTwoPi * 1e6); }

/// Physical constants of the cavity + ion-crystal detector.
///
/// All rates are angular frequencies in rad/s, times in seconds. The defaults
/// are the measured D3/2 <-> P1/2 values for a ~1500-ion 40Ca+ crystal in a
/// finesse-3000 cavity together with a 2 % solid-angle lens and a 40 %
/// efficient photodetector at 397 nm.
struct DetectorParams {
    double g = angular_from_mhz(0.53);       ///< single ion-cavity coupling
    std::int64_t n_ions = 1500;              ///< effective ions in the cavity mode
    double kappa = angular_from_mhz(2.15);   ///< cavity field decay
    double gamma = angular_from_mhz(11.9);   ///< optical decoherence |g> <-> |e>
    double tau_d = 1.15;                     ///< D-state lifetime
    double gamma_ps = angular_from_mhz(20.7);///< P1/2 -> S1/2 decay
    double solid_angle_fraction = 0.02;      ///< collected solid angle / 4π
    double eta_detector = 0.4;               ///< photodetector quantum efficiency
    std::optional<double> finesse = 3000.0;  ///< metadata only

    /// Throws InvalidParameter naming the first offending field.
    void validate() const;

    bool operator==(const DetectorParams &) const = default;
};

struct DerivedQuantities {
    double cooperativity = 0.0;
    double conversion_efficiency = 0.0;
    double photon_rate_per_ion = 0.0;  ///< detected counts per second per cycling ion
    double min_pulse_duration = 0.0;   ///< seconds
};

/// C = g² N / (κ γ).
double cooperativity(const DetectorParams &p);

/// η = C / (1 + C). Throws for negative or non-finite C.
double conversion_efficiency(double cooperativity);

/// Detected fluorescence rate of one ion cycling on the saturated
/// S1/2 <-> P1/2 <-> D3/2 system. A saturated ion spends a quarter of its
/// time in P1/2, so R = γ_PS Θ η_D / (16 π) with Θ the collected solid angle
/// in steradians.
double photon_rate_per_ion(const DetectorParams &p);

/// Shortest probe pulse that is still stored adiabatically, 50 / (C γ).
double min_pulse_duration(const DetectorParams &p);
double min_pulse_duration(double cooperativity, double gamma);

DerivedQuantities derive(const DetectorParams &p);

}  // namespace ionpnr
