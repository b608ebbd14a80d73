#pragma once

#include <iosfwd>
#include <string>

#include "run_config.h"

namespace ionpnr::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kConfigError = 2, kNumericalFailure = 3 };

/// Fixed-point with 12 significant digits, scientific outside [1e-6, 1e6).
std::string format_number(double v);

int cmd_params(const RunConfig &cfg, std::ostream &out);

/// CSV: n_fl,pmf_eta1,pmf_mixture,threshold_flag for the first n_in at t_us.
/// threshold_flag is k where n_fl equals θ_k and 0 elsewhere.
int cmd_pmf(const RunConfig &cfg, std::ostream &out);

/// CSV: k,theta,crossing,mean_lo,mean_hi at t_us.
int cmd_thresholds(const RunConfig &cfg, std::ostream &out);

/// CSV: t_us,n_in,p_err,p_floor over the time grid.
int cmd_error_curve(const RunConfig &cfg, std::ostream &out);

/// Report to `report`; CSV n_fl,empirical_pmf,analytic_pmf to `csv` when
/// non-null; per-trial CSV to `trials` when non-null.
int cmd_montecarlo(const RunConfig &cfg, std::ostream &report, std::ostream *csv, std::ostream *trials);

int cmd_timing(const RunConfig &cfg, std::ostream &out);

/// CSV: n_in,p_floor,t_target_us,t_floor_us,rate_khz, one row per n_in.
/// Times that are not reached within t_stop_us are written as "inf".
int cmd_sweep(const RunConfig &cfg, std::ostream &out);

}  // namespace ionpnr::cli
