#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ionpnr/fluorescence.h"

namespace ionpnr {

inline constexpr std::int64_t kDefaultMaxHypothesis = 15;

/// Integer decision boundaries between adjacent photon-number hypotheses.
///
/// `boundaries[k-1]` holds θ_k. A count n is estimated as k when
/// θ_k <= n < θ_{k+1}, with θ_0 = 0 and θ_{n_max+1} = +inf.
struct ThresholdTable {
    double collection_time = 0.0;
    std::int64_t n_max = 0;
    std::vector<std::int64_t> boundaries;

    static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

    /// θ_k for k in [0, n_max + 1]; θ_{n_max+1} is kUnbounded.
    std::int64_t theta(std::int64_t k) const;

    std::int64_t estimate(std::int64_t n_fl) const;
};

/// Real-valued count at which Po[n; mu_hi] overtakes Po[n; mu_lo]:
/// (mu_hi - mu_lo) / ln(mu_hi / mu_lo). Returns 0 when mu_lo is 0.
double poisson_crossing(double mu_lo, double mu_hi);

/// Boundaries placed where the pure-Poisson hypotheses k-1 and k cross,
/// using the eta = 1 means k R t + mu_decay + mu_residual. A count sitting
/// exactly on a crossing goes to the higher hypothesis. If rounding would
/// leave a hypothesis with an empty window, its boundary is pushed to one
/// past the previous one so the table stays strictly increasing.
ThresholdTable thresholds(const FluorescenceModel &m, double t, std::int64_t n_max = kDefaultMaxHypothesis);

std::int64_t estimate(const ThresholdTable &table, std::int64_t n_fl);

/// P(estimate = j | n_in photons sent) for j = 0 .. n_max, under the
/// binomial-conversion mixture.
std::vector<double> classification_probabilities(const FluorescenceModel &m, const ThresholdTable &table,
                                                 std::int64_t n_in);

/// Probability that n_in input photons are estimated as anything other
/// than n_in.
double error_probability(const FluorescenceModel &m, double t, std::int64_t n_in,
                         std::int64_t n_max = kDefaultMaxHypothesis);

/// 1 - eta^n_in: the chance that at least one photon was never stored.
double error_floor(double eta, std::int64_t n_in);

struct ErrorCurvePoint {
    double t = 0.0;
    std::int64_t n_in = 0;
    double p_err = 0.0;
    double p_floor = 0.0;
};

/// One point per (t, n_in), t-major.
std::vector<ErrorCurvePoint> error_curve(const FluorescenceModel &m, std::span<const double> times,
                                         std::span<const std::int64_t> n_in_values,
                                         std::int64_t n_max = kDefaultMaxHypothesis);

struct TimeSearchOptions {
    double grid_step = 0.25e-6;  ///< coarse scan step, s
    double resolution = 1e-9;    ///< bisection stops below this bracket width, s
    std::int64_t n_max = kDefaultMaxHypothesis;
};

struct TimeSearchResult {
    enum class Status { kReached, kBelowFloor, kNotReached };
    Status status = Status::kNotReached;
    std::optional<double> time;

    bool achievable() const { return status == Status::kReached; }
};

/// Smallest collection time with error_probability <= p_target. The error
/// curve is scanned on a uniform grid up to t_max, and the first grid
/// interval that crosses the target is refined by bisection.
TimeSearchResult time_to_error(const FluorescenceModel &m, std::int64_t n_in, double p_target, double t_max,
                               const TimeSearchOptions &opts = {});

/// First time at which the error probability comes within `tolerance` of
/// error_floor(eta, n_in).
TimeSearchResult time_to_floor(const FluorescenceModel &m, std::int64_t n_in, double tolerance, double t_max,
                               const TimeSearchOptions &opts = {});

}  // namespace ionpnr
