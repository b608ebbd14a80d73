#include "ionpnr/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ionpnr/errors.h"

namespace ionpnr {

void McConfig::validate() const {
    model.validate();
    if (n_in < 0) throw InvalidParameter("n_in must be >= 0");
    if (!(t >= 0.0) || std::isinf(t)) throw InvalidParameter("collection time must be finite and >= 0");
    if (n_trials < 1) throw InvalidParameter("n_trials must be >= 1");
    if (n_max < 1) throw InvalidParameter("n_max must be >= 1");
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

std::int64_t draw_poisson(double mean, std::mt19937_64 &rng) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<std::int64_t>(mean)(rng);
}

}  // namespace

TrialRecord run_trial(const McConfig &cfg, const ThresholdTable *table, std::mt19937_64 &rng) {
    const FluorescenceModel &m = cfg.model;
    const double t = cfg.t;
    TrialRecord rec;

    rec.k_converted = m.eta == 1.0 ? cfg.n_in : std::binomial_distribution<std::int64_t>(cfg.n_in, m.eta)(rng);

    // Converted and residual ions cycle for the full window.
    double exposure = static_cast<double>(rec.k_converted + m.n_residual) * t;

    if (cfg.path == SamplingPath::kPerIon) {
        // T_d = -tau ln(1 - u) < t  <=>  u < 1 - e^{-t/tau}
        const double p_decay = -std::expm1(-t / m.tau_d);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        for (std::int64_t ion = 0; ion < m.n_ions; ++ion) {
            const double u = uniform(rng);
            if (u < p_decay) {
                const double decay_time = -m.tau_d * std::log1p(-u);
                exposure += std::max(0.0, t - decay_time);
                ++rec.n_decayed;
            }
        }
        rec.n_fl = draw_poisson(m.rate_per_ion * exposure, rng);
    } else {
        const double p_decay = -std::expm1(-t / m.tau_d);
        if (m.n_ions > 0 && p_decay > 0.0) {
            rec.n_decayed = std::binomial_distribution<std::int64_t>(m.n_ions, p_decay)(rng);
        }
        rec.n_fl = draw_poisson(m.rate_per_ion * exposure, rng) + draw_poisson(mu_decay(m, t), rng);
    }

    rec.estimate = table != nullptr ? table->estimate(rec.n_fl) : 0;
    return rec;
}

namespace {

struct ChunkResult {
    std::vector<std::int64_t> histogram;
    std::int64_t misestimates = 0;
    long double sum_n_fl = 0;
    long double sum_decayed = 0;
};

}  // namespace

McSummary run_batch(const McConfig &cfg) {
    cfg.validate();

    std::optional<ThresholdTable> table;
    if (cfg.t > 0.0 && cfg.model.rate_per_ion > 0.0) table = thresholds(cfg.model, cfg.t, cfg.n_max);
    const ThresholdTable *table_ptr = table ? &*table : nullptr;

    const std::int64_t n_chunks = (cfg.n_trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
    std::vector<ChunkResult> chunks(static_cast<std::size_t>(n_chunks));

    McSummary summary;
    summary.n_trials = cfg.n_trials;
    if (cfg.keep_trials) summary.trials.resize(static_cast<std::size_t>(cfg.n_trials));

    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (std::int64_t c = next++; c < n_chunks; c = next++) {
            std::mt19937_64 rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(c)));
            ChunkResult &out = chunks[static_cast<std::size_t>(c)];
            const std::int64_t begin = c * kTrialsPerChunk;
            const std::int64_t end = std::min(cfg.n_trials, begin + kTrialsPerChunk);
            for (std::int64_t i = begin; i < end; ++i) {
                const TrialRecord rec = run_trial(cfg, table_ptr, rng);
                const auto bin = static_cast<std::size_t>(rec.n_fl);
                if (out.histogram.size() <= bin) out.histogram.resize(bin + 1, 0);
                ++out.histogram[bin];
                out.misestimates += rec.estimate != cfg.n_in ? 1 : 0;
                out.sum_n_fl += rec.n_fl;
                out.sum_decayed += rec.n_decayed;
                if (cfg.keep_trials) summary.trials[static_cast<std::size_t>(i)] = rec;
            }
        }
    };

    unsigned n_threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::int64_t>(n_threads, n_chunks));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
        worker();
    }

    long double sum_n_fl = 0;
    long double sum_decayed = 0;
    for (const ChunkResult &c : chunks) {
        if (summary.histogram.size() < c.histogram.size()) summary.histogram.resize(c.histogram.size(), 0);
        for (std::size_t n = 0; n < c.histogram.size(); ++n) summary.histogram[n] += c.histogram[n];
        summary.misestimates += c.misestimates;
        sum_n_fl += c.sum_n_fl;
        sum_decayed += c.sum_decayed;
    }

    const auto trials = static_cast<double>(cfg.n_trials);
    summary.empirical_pmf.resize(summary.histogram.size());
    for (std::size_t n = 0; n < summary.histogram.size(); ++n) {
        summary.empirical_pmf[n] = static_cast<double>(summary.histogram[n]) / trials;
    }
    summary.empirical_error_rate = static_cast<double>(summary.misestimates) / trials;
    summary.mean_n_fl = static_cast<double>(sum_n_fl / cfg.n_trials);
    summary.mean_decayed = static_cast<double>(sum_decayed / cfg.n_trials);

    const std::int64_t upto = std::max<std::int64_t>(mixture_cutoff(cfg.model, cfg.n_in, cfg.t),
                                                     static_cast<std::int64_t>(summary.histogram.size()) - 1);
    const CountDistribution analytic = count_distribution(cfg.model, cfg.n_in, cfg.t, upto);
    summary.tvd_vs_analytic = total_variation_distance(summary.empirical_pmf, analytic.pmf);
    return summary;
}

double total_variation_distance(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = std::max(a.size(), b.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        sum += std::abs(x - y);
    }
    return 0.5 * sum;
}

}  // namespace ionpnr
