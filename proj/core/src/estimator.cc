#include "ionpnr/estimator.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ionpnr/errors.h"
#include "ionpnr/poisson.h"

namespace ionpnr {

std::int64_t ThresholdTable::theta(std::int64_t k) const {
    if (k <= 0) return 0;
    if (k > n_max) return kUnbounded;
    return boundaries[static_cast<std::size_t>(k - 1)];
}

std::int64_t ThresholdTable::estimate(std::int64_t n_fl) const {
    if (n_fl < 0) throw InvalidParameter("n_fl must be >= 0");
    return std::upper_bound(boundaries.begin(), boundaries.end(), n_fl) - boundaries.begin();
}

double poisson_crossing(double mu_lo, double mu_hi) {
    if (!(mu_lo >= 0.0) || !(mu_hi >= 0.0)) throw InvalidParameter("Poisson means must be >= 0");
    if (mu_hi == mu_lo) throw DegenerateHypotheses("adjacent hypotheses share the mean " + std::to_string(mu_lo));
    if (mu_hi < mu_lo) std::swap(mu_hi, mu_lo);
    if (mu_lo == 0.0) return 0.0;
    const double diff = mu_hi - mu_lo;
    return diff / std::log1p(diff / mu_lo);
}

ThresholdTable thresholds(const FluorescenceModel &m, double t, std::int64_t n_max) {
    m.validate();
    if (!(t > 0.0) || std::isinf(t)) throw InvalidParameter("collection time must be > 0 for thresholds");
    if (n_max < 1) throw InvalidParameter("n_max must be >= 1");

    ThresholdTable table;
    table.collection_time = t;
    table.n_max = n_max;
    table.boundaries.reserve(static_cast<std::size_t>(n_max));

    const double background = mu_decay(m, t) + mu_residual(m, t);
    const double step = m.rate_per_ion * t;
    std::int64_t previous = 0;
    for (std::int64_t k = 1; k <= n_max; ++k) {
        const double mu_lo = static_cast<double>(k - 1) * step + background;
        const double mu_hi = static_cast<double>(k) * step + background;
        auto theta = static_cast<std::int64_t>(std::ceil(poisson_crossing(mu_lo, mu_hi)));
        theta = std::max(theta, previous + 1);
        table.boundaries.push_back(theta);
        previous = theta;
    }
    return table;
}

std::int64_t estimate(const ThresholdTable &table, std::int64_t n_fl) { return table.estimate(n_fl); }

std::vector<double> classification_probabilities(const FluorescenceModel &m, const ThresholdTable &table,
                                                 std::int64_t n_in) {
    const double t = table.collection_time;
    const CountDistribution dist = count_distribution(m, n_in, t);
    const auto last = static_cast<std::int64_t>(dist.pmf.size()) - 1;

    std::vector<double> probs(static_cast<std::size_t>(table.n_max) + 1, 0.0);
    for (std::int64_t j = 0; j <= table.n_max; ++j) {
        const std::int64_t lo = table.theta(j);
        const std::int64_t hi = std::min(table.theta(j + 1) - 1, last);
        double mass = 0.0;
        for (std::int64_t n = lo; n <= hi; ++n) mass += dist.pmf[static_cast<std::size_t>(n)];
        probs[static_cast<std::size_t>(j)] = mass;
    }
    return probs;
}

double error_probability(const FluorescenceModel &m, double t, std::int64_t n_in, std::int64_t n_max) {
    if (n_in < 0 || n_in > n_max) throw InvalidParameter("n_in must lie in [0, n_max]");
    const ThresholdTable table = thresholds(m, t, n_max);
    const auto probs = classification_probabilities(m, table, n_in);
    return std::clamp(1.0 - probs[static_cast<std::size_t>(n_in)], 0.0, 1.0);
}

double error_floor(double eta, std::int64_t n_in) {
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidParameter("eta must lie in (0, 1]");
    if (n_in < 0) throw InvalidParameter("n_in must be >= 0");
    return -std::expm1(static_cast<double>(n_in) * std::log(eta));
}

std::vector<ErrorCurvePoint> error_curve(const FluorescenceModel &m, std::span<const double> times,
                                         std::span<const std::int64_t> n_in_values, std::int64_t n_max) {
    if (times.empty() || n_in_values.empty()) throw InvalidParameter("error curve grid is empty");
    std::vector<ErrorCurvePoint> out;
    out.reserve(times.size() * n_in_values.size());
    for (double t : times) {
        const ThresholdTable table = thresholds(m, t, n_max);
        for (std::int64_t n_in : n_in_values) {
            if (n_in < 0 || n_in > n_max) throw InvalidParameter("n_in must lie in [0, n_max]");
            const auto probs = classification_probabilities(m, table, n_in);
            out.push_back({t, n_in, std::clamp(1.0 - probs[static_cast<std::size_t>(n_in)], 0.0, 1.0),
                           error_floor(m.eta, n_in)});
        }
    }
    return out;
}

TimeSearchResult time_to_error(const FluorescenceModel &m, std::int64_t n_in, double p_target, double t_max,
                               const TimeSearchOptions &opts) {
    if (!(p_target > 0.0 && p_target < 1.0)) throw InvalidParameter("p_target must lie in (0, 1)");
    if (!(t_max > 0.0) || std::isinf(t_max)) throw InvalidParameter("t_max must be finite and > 0");
    if (!(opts.grid_step > 0.0) || !(opts.resolution > 0.0)) throw InvalidParameter("search steps must be > 0");

    if (p_target < error_floor(m.eta, n_in)) return {TimeSearchResult::Status::kBelowFloor, std::nullopt};

    auto reached = [&](double t) { return error_probability(m, t, n_in, opts.n_max) <= p_target; };

    double lo = 0.0;
    const auto steps = static_cast<std::int64_t>(std::ceil(t_max / opts.grid_step));
    for (std::int64_t i = 1; i <= steps; ++i) {
        const double hi = std::min(static_cast<double>(i) * opts.grid_step, t_max);
        if (!reached(hi)) {
            lo = hi;
            continue;
        }
        double a = lo;
        double b = hi;
        while (b - a > opts.resolution) {
            const double mid = 0.5 * (a + b);
            if (mid > 0.0 && reached(mid)) {
                b = mid;
            } else {
                a = mid;
            }
        }
        return {TimeSearchResult::Status::kReached, b};
    }
    return {TimeSearchResult::Status::kNotReached, std::nullopt};
}

TimeSearchResult time_to_floor(const FluorescenceModel &m, std::int64_t n_in, double tolerance, double t_max,
                               const TimeSearchOptions &opts) {
    if (!(tolerance > 0.0)) throw InvalidParameter("tolerance must be > 0");
    // The error probability never drops below the floor, so being within
    // `tolerance` of it is the same as p_err <= floor + tolerance.
    const double target = error_floor(m.eta, n_in) + tolerance;
    if (target >= 1.0) throw InvalidParameter("floor + tolerance must be < 1");
    return time_to_error(m, n_in, target, t_max, opts);
}

}  // namespace ionpnr
