#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "ionpnr/estimator.h"
#include "ionpnr/fluorescence.h"
#include "ionpnr/montecarlo.h"
#include "ionpnr/timing.h"

namespace ionpnr::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    const double mag = std::abs(v);
    if (mag >= 1e6 || mag < 1e-6) {
        std::snprintf(buf, sizeof buf, "%.11e", v);
        return buf;
    }
    const int exponent = static_cast<int>(std::floor(std::log10(mag)));
    const int decimals = std::max(0, 11 - exponent);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        s.erase(s.find_last_not_of('0') + 1);
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

namespace {

std::string time_or_inf(const TimeSearchResult &r) {
    return r.achievable() ? format_number(*r.time * 1e6) : std::string("inf");
}

}  // namespace

int cmd_params(const RunConfig &cfg, std::ostream &out) {
    const DetectorParams p = cfg.detector();
    const double c = cfg.effective_cooperativity();
    const double rate = photon_rate_per_ion(p);
    const double t_min = min_pulse_duration(c, p.gamma);

    out << "cooperativity C          " << format_number(c) << (cfg.cooperativity ? "  (override)" : "") << '\n'
        << "conversion efficiency    " << format_number(conversion_efficiency(c)) << '\n';
    if (cfg.eta) out << "eta used for readout     " << format_number(*cfg.eta) << "  (override)\n";
    out << "photon rate per ion R    " << format_number(rate * 1e-3) << " kHz\n"
        << "min pulse duration       " << format_number(t_min * 1e9) << " ns\n"
        << "C gamma                  " << format_number(c * p.gamma) << " 1/s\n";
    if (p.finesse) out << "finesse (metadata)       " << format_number(*p.finesse) << '\n';
    return kOk;
}

int cmd_pmf(const RunConfig &cfg, std::ostream &out) {
    const FluorescenceModel m = cfg.model();
    const FluorescenceModel ideal = m.with_eta(1.0);
    const std::int64_t n_in = cfg.n_in.front();
    const double t = cfg.t_us * 1e-6;
    const std::int64_t last = mixture_cutoff(m, n_in, t);

    std::optional<ThresholdTable> table;
    if (t > 0.0 && m.rate_per_ion > 0.0) table = thresholds(m, t, cfg.n_max);

    const CountDistribution pure = count_distribution(ideal, n_in, t, last);
    const CountDistribution mixed = count_distribution(m, n_in, t, last);

    out << "n_fl,pmf_eta1,pmf_mixture,threshold_flag\n";
    for (std::int64_t n = 0; n <= last; ++n) {
        std::int64_t flag = 0;
        if (table) {
            const auto &b = table->boundaries;
            if (auto it = std::find(b.begin(), b.end(), n); it != b.end()) flag = (it - b.begin()) + 1;
        }
        out << n << ',' << format_number(pure.at(n)) << ',' << format_number(mixed.at(n)) << ',' << flag << '\n';
    }
    return kOk;
}

int cmd_thresholds(const RunConfig &cfg, std::ostream &out) {
    const FluorescenceModel m = cfg.model();
    const double t = cfg.t_us * 1e-6;
    const ThresholdTable table = thresholds(m, t, cfg.n_max);
    out << "k,theta,crossing,mean_lo,mean_hi\n";
    for (std::int64_t k = 1; k <= table.n_max; ++k) {
        const double lo = total_mean(m, k - 1, t);
        const double hi = total_mean(m, k, t);
        out << k << ',' << table.theta(k) << ',' << format_number(poisson_crossing(lo, hi)) << ','
            << format_number(lo) << ',' << format_number(hi) << '\n';
    }
    return kOk;
}

int cmd_error_curve(const RunConfig &cfg, std::ostream &out) {
    const FluorescenceModel m = cfg.model();
    const auto grid = cfg.time_grid();
    const auto points = error_curve(m, grid, cfg.n_in, cfg.n_max);
    out << "t_us,n_in,p_err,p_floor\n";
    for (const ErrorCurvePoint &pt : points) {
        out << format_number(pt.t * 1e6) << ',' << pt.n_in << ',' << format_number(pt.p_err) << ','
            << format_number(pt.p_floor) << '\n';
    }
    return kOk;
}

int cmd_montecarlo(const RunConfig &cfg, std::ostream &report, std::ostream *csv, std::ostream *trials) {
    McConfig mc;
    mc.model = cfg.model();
    mc.n_in = cfg.n_in.front();
    mc.t = cfg.t_us * 1e-6;
    mc.n_trials = cfg.trials;
    mc.seed = cfg.seed;
    mc.n_max = cfg.n_max;
    mc.path = cfg.sampling;
    mc.keep_trials = trials != nullptr;
    mc.threads = cfg.threads;

    const McSummary s = run_batch(mc);
    const double analytic_mean = mixture_mean(mc.model, mc.n_in, mc.t);
    double analytic_error = 0.0;
    if (mc.t > 0.0 && mc.model.rate_per_ion > 0.0) analytic_error = error_probability(mc.model, mc.t, mc.n_in, mc.n_max);
    const double se = std::sqrt(std::max(analytic_error * (1.0 - analytic_error), 1e-300) / static_cast<double>(s.n_trials));

    report << "sampling                 " << (mc.path == SamplingPath::kPerIon ? "per-ion" : "aggregate") << '\n'
           << "trials                   " << s.n_trials << '\n'
           << "seed                     " << mc.seed << '\n'
           << "n_in                     " << mc.n_in << '\n'
           << "t                        " << format_number(cfg.t_us) << " us\n"
           << "mean n_fl (empirical)    " << format_number(s.mean_n_fl) << '\n'
           << "mean n_fl (analytic)     " << format_number(analytic_mean) << '\n'
           << "mean decayed ions        " << format_number(s.mean_decayed) << '\n'
           << "tvd vs analytic pmf      " << format_number(s.tvd_vs_analytic) << '\n'
           << "error rate (empirical)   " << format_number(s.empirical_error_rate) << '\n'
           << "error rate (analytic)    " << format_number(analytic_error) << "  (binomial se "
           << format_number(se) << ")\n";

    if (csv != nullptr) {
        const auto upto = std::max<std::int64_t>(mixture_cutoff(mc.model, mc.n_in, mc.t),
                                                 static_cast<std::int64_t>(s.empirical_pmf.size()) - 1);
        const CountDistribution analytic = count_distribution(mc.model, mc.n_in, mc.t, upto);
        *csv << "n_fl,empirical_pmf,analytic_pmf\n";
        for (std::int64_t n = 0; n <= upto; ++n) {
            const double emp = static_cast<std::size_t>(n) < s.empirical_pmf.size()
                                   ? s.empirical_pmf[static_cast<std::size_t>(n)]
                                   : 0.0;
            *csv << n << ',' << format_number(emp) << ',' << format_number(analytic.at(n)) << '\n';
        }
    }
    if (trials != nullptr) {
        *trials << "trial,k_converted,n_decayed,n_fl,estimate\n";
        for (std::size_t i = 0; i < s.trials.size(); ++i) {
            const TrialRecord &r = s.trials[i];
            *trials << i << ',' << r.k_converted << ',' << r.n_decayed << ',' << r.n_fl << ',' << r.estimate << '\n';
        }
    }
    return kOk;
}

int cmd_timing(const RunConfig &cfg, std::ostream &out) {
    ProtocolBudget budget = cfg.budget();
    if (cfg.auto_collect) {
        const std::int64_t n_in = *std::max_element(cfg.n_in.begin(), cfg.n_in.end());
        TimeSearchOptions opts;
        opts.n_max = cfg.n_max;
        const auto r = time_to_error(cfg.model(), n_in, cfg.p_target, cfg.t_stop_us * 1e-6, opts);
        if (!r.achievable()) {
            out << "collection time for n_in=" << n_in << " at p_err <= " << format_number(cfg.p_target)
                << " is not achievable"
                << (r.status == TimeSearchResult::Status::kBelowFloor ? " (target below efficiency floor)"
                                                                       : " within t_stop_us")
                << '\n';
            return kNumericalFailure;
        }
        budget.t_collect = *r.time;
    }
    out << "stage       duration_us\n";
    for (const Stage &s : stages(budget)) {
        char name[16];
        std::snprintf(name, sizeof name, "%-11s", std::string(s.name).c_str());
        out << name << ' ' << format_number(s.duration * 1e6) << '\n';
    }
    out << "total       " << format_number(budget.total() * 1e6) << '\n'
        << "repetition rate " << format_number(repetition_rate(budget) * 1e-3) << " kHz\n";
    return kOk;
}

int cmd_sweep(const RunConfig &cfg, std::ostream &out) {
    const FluorescenceModel m = cfg.model();
    TimeSearchOptions opts;
    opts.n_max = cfg.n_max;
    const double t_max = cfg.t_stop_us * 1e-6;

    out << "n_in,p_floor,t_target_us,t_floor_us,rate_khz\n";
    for (std::int64_t n_in : cfg.n_in) {
        const auto target = time_to_error(m, n_in, cfg.p_target, t_max, opts);
        const auto floor = time_to_floor(m, n_in, cfg.floor_tolerance, t_max, opts);
        std::string rate = "0";
        if (target.achievable()) {
            ProtocolBudget b = cfg.budget();
            b.t_collect = *target.time;
            rate = format_number(repetition_rate(b) * 1e-3);
        }
        out << n_in << ',' << format_number(error_floor(m.eta, n_in)) << ',' << time_or_inf(target) << ','
            << time_or_inf(floor) << ',' << rate << '\n';
    }
    return kOk;
}

}  // namespace ionpnr::cli
