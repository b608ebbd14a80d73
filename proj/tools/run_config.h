#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ionpnr/detector.h"
#include "ionpnr/fluorescence.h"
#include "ionpnr/montecarlo.h"
#include "ionpnr/timing.h"

namespace ionpnr::cli {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

/// Everything a subcommand needs, in the units a user types.
///
/// Frequencies are kept exactly as entered (MHz) together with the
/// `angular` switch; conversion to rad/s happens only in detector(). With
/// angular = true a value f means 2π·f MHz, otherwise f·10⁶ rad/s.
struct RunConfig {
    bool angular = true;
    double g_mhz = 0.53;
    std::int64_t n_ions = 1500;
    double kappa_mhz = 2.15;
    double gamma_mhz = 11.9;
    double gamma_ps_mhz = 20.7;
    double tau_d_s = 1.15;
    double solid_angle_fraction = 0.02;
    double eta_detector = 0.4;
    std::optional<double> finesse = 3000.0;

    std::optional<double> cooperativity;  ///< overrides g²N/κγ
    std::optional<double> eta;            ///< overrides C/(1+C)
    std::int64_t n_residual = 0;

    std::int64_t n_max = 15;
    double p_target = 0.10;
    double floor_tolerance = 0.01;

    double t_us = 150.0;
    double t_start_us = 1.0;
    double t_stop_us = 600.0;
    double t_step_us = 1.0;
    std::vector<std::int64_t> n_in = {1, 3, 10};

    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    SamplingPath sampling = SamplingPath::kPerIon;
    unsigned threads = 0;

    double t_init_us = 25.0;
    double t_storage_us = 1.0;
    double t_collect_us = 200.0;
    double t_recool_us = 100.0;
    bool auto_collect = false;

    std::string out;

    bool operator==(const RunConfig &) const = default;

    DetectorParams detector() const;
    double effective_cooperativity() const;
    double effective_eta() const;
    FluorescenceModel model() const;
    ProtocolBudget budget() const;
    /// t_start .. t_stop inclusive in steps of t_step, seconds.
    std::vector<double> time_grid() const;

    /// Throws ConfigError describing the first inconsistent field.
    void validate() const;
};

/// Detector keys that a config file must define.
const std::vector<std::string> &required_file_keys();

/// Assigns one key from its text form. Throws ConfigError for unknown keys
/// or malformed values; `where` prefixes the message (e.g. "run.cfg:12").
void set_field(RunConfig &cfg, const std::string &key, const std::string &value, const std::string &where = {});

/// Parses `key = value` lines; '#' starts a comment. All required_file_keys
/// must be present.
RunConfig parse_config(std::istream &in, const std::string &source_name = "<config>");
RunConfig load_config(const std::string &path);

/// Applies overrides in order on top of `cfg`, then validates.
void apply_overrides(RunConfig &cfg, const std::vector<std::pair<std::string, std::string>> &overrides);

/// Writes a file that parse_config reads back to an identical RunConfig.
void dump_config(const RunConfig &cfg, std::ostream &out);

}  // namespace ionpnr::cli
