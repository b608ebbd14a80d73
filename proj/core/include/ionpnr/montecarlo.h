#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ionpnr/estimator.h"
#include "ionpnr/fluorescence.h"

namespace ionpnr {

/// How the shelved-ion background is drawn in a trial.
enum class SamplingPath {
    /// Every one of the N shelved ions gets an exponential decay time and
    /// fluoresces from then on. This is the physical process.
    kPerIon,
    /// The background is drawn as a single Poisson(mu_decay) count, which is
    /// the distribution assumed by the analytic count model.
    kAggregate,
};

struct McConfig {
    FluorescenceModel model;
    std::int64_t n_in = 1;
    double t = 150e-6;
    std::int64_t n_trials = 100000;
    std::uint64_t seed = 1;
    std::int64_t n_max = kDefaultMaxHypothesis;
    SamplingPath path = SamplingPath::kPerIon;
    bool keep_trials = false;  ///< retain every TrialRecord in the summary
    unsigned threads = 0;      ///< 0 = hardware concurrency

    void validate() const;
};

struct TrialRecord {
    std::int64_t k_converted = 0;
    std::int64_t n_decayed = 0;
    std::int64_t n_fl = 0;
    std::int64_t estimate = 0;

    bool operator==(const TrialRecord &) const = default;
};

struct McSummary {
    std::int64_t n_trials = 0;
    std::vector<std::int64_t> histogram;  ///< counts per n_fl
    std::vector<double> empirical_pmf;    ///< histogram / n_trials
    std::int64_t misestimates = 0;
    double empirical_error_rate = 0.0;
    double tvd_vs_analytic = 0.0;
    double mean_n_fl = 0.0;
    double mean_decayed = 0.0;
    std::vector<TrialRecord> trials;  ///< filled only with keep_trials

    bool operator==(const McSummary &) const = default;
};

/// Trials are grouped into fixed-size chunks; chunk c draws from its own
/// generator seeded with substream_seed(seed, c). Results therefore do not
/// depend on how chunks are spread over threads.
inline constexpr std::int64_t kTrialsPerChunk = 4096;

/// SplitMix64 finaliser applied to (seed, stream).
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

/// One detection trial. `table` may be null only when cfg.t == 0, in which
/// case the estimate is 0.
TrialRecord run_trial(const McConfig &cfg, const ThresholdTable *table, std::mt19937_64 &rng);

McSummary run_batch(const McConfig &cfg);

/// 0.5 * sum |a_n - b_n|, treating the shorter span as zero-padded.
double total_variation_distance(std::span<const double> a, std::span<const double> b);

}  // namespace ionpnr
