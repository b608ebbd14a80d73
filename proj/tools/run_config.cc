#include "run_config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "ionpnr/errors.h"

namespace ionpnr::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string prefix(const std::string &where) { return where.empty() ? std::string() : where + ": "; }

[[noreturn]] void bad_value(const std::string &where, const std::string &key, const std::string &value,
                            const char *expected) {
    throw ConfigError(prefix(where) + "field '" + key + "': expected " + expected + ", got '" + value + "'");
}

double to_double(const std::string &where, const std::string &key, const std::string &value) {
    double v = 0.0;
    const char *end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) bad_value(where, key, value, "a finite number");
    return v;
}

std::int64_t to_int(const std::string &where, const std::string &key, const std::string &value) {
    std::int64_t v = 0;
    const char *end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc() || ptr != end) bad_value(where, key, value, "an integer");
    return v;
}

std::uint64_t to_uint(const std::string &where, const std::string &key, const std::string &value) {
    std::uint64_t v = 0;
    const char *end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc() || ptr != end) bad_value(where, key, value, "a non-negative integer");
    return v;
}

bool to_bool(const std::string &where, const std::string &key, const std::string &value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    bad_value(where, key, value, "true or false");
}

std::optional<double> to_optional(const std::string &where, const std::string &key, const std::string &value) {
    if (value == "none" || value.empty()) return std::nullopt;
    return to_double(where, key, value);
}

std::vector<std::int64_t> to_int_list(const std::string &where, const std::string &key, const std::string &value) {
    std::vector<std::int64_t> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(where, key, trim(item)));
    return out;
}

using Setter = std::function<void(RunConfig &, const std::string &, const std::string &, const std::string &)>;

template <typename T>
Setter double_field(T RunConfig::*member) {
    return [member](RunConfig &c, const std::string &w, const std::string &k, const std::string &v) {
        c.*member = to_double(w, k, v);
    };
}

const std::map<std::string, Setter> &setters() {
    static const std::map<std::string, Setter> table = {
        {"angular", [](RunConfig &c, auto &w, auto &k, auto &v) { c.angular = to_bool(w, k, v); }},
        {"g_mhz", double_field(&RunConfig::g_mhz)},
        {"n_ions", [](RunConfig &c, auto &w, auto &k, auto &v) { c.n_ions = to_int(w, k, v); }},
        {"kappa_mhz", double_field(&RunConfig::kappa_mhz)},
        {"gamma_mhz", double_field(&RunConfig::gamma_mhz)},
        {"gamma_ps_mhz", double_field(&RunConfig::gamma_ps_mhz)},
        {"tau_d_s", double_field(&RunConfig::tau_d_s)},
        {"solid_angle_fraction", double_field(&RunConfig::solid_angle_fraction)},
        {"eta_detector", double_field(&RunConfig::eta_detector)},
        {"finesse", [](RunConfig &c, auto &w, auto &k, auto &v) { c.finesse = to_optional(w, k, v); }},
        {"cooperativity", [](RunConfig &c, auto &w, auto &k, auto &v) { c.cooperativity = to_optional(w, k, v); }},
        {"eta", [](RunConfig &c, auto &w, auto &k, auto &v) { c.eta = to_optional(w, k, v); }},
        {"n_residual", [](RunConfig &c, auto &w, auto &k, auto &v) { c.n_residual = to_int(w, k, v); }},
        {"n_max", [](RunConfig &c, auto &w, auto &k, auto &v) { c.n_max = to_int(w, k, v); }},
        {"p_target", double_field(&RunConfig::p_target)},
        {"floor_tolerance", double_field(&RunConfig::floor_tolerance)},
        {"t_us", double_field(&RunConfig::t_us)},
        {"t_start_us", double_field(&RunConfig::t_start_us)},
        {"t_stop_us", double_field(&RunConfig::t_stop_us)},
        {"t_step_us", double_field(&RunConfig::t_step_us)},
        {"n_in", [](RunConfig &c, auto &w, auto &k, auto &v) { c.n_in = to_int_list(w, k, v); }},
        {"trials", [](RunConfig &c, auto &w, auto &k, auto &v) { c.trials = to_int(w, k, v); }},
        {"seed", [](RunConfig &c, auto &w, auto &k, auto &v) { c.seed = to_uint(w, k, v); }},
        {"sampling",
         [](RunConfig &c, auto &w, auto &k, auto &v) {
             if (v == "per-ion") {
                 c.sampling = SamplingPath::kPerIon;
             } else if (v == "aggregate") {
                 c.sampling = SamplingPath::kAggregate;
             } else {
                 bad_value(w, k, v, "per-ion or aggregate");
             }
         }},
        {"threads",
         [](RunConfig &c, auto &w, auto &k, auto &v) { c.threads = static_cast<unsigned>(to_uint(w, k, v)); }},
        {"t_init_us", double_field(&RunConfig::t_init_us)},
        {"t_storage_us", double_field(&RunConfig::t_storage_us)},
        {"t_collect_us", double_field(&RunConfig::t_collect_us)},
        {"t_recool_us", double_field(&RunConfig::t_recool_us)},
        {"auto_collect", [](RunConfig &c, auto &w, auto &k, auto &v) { c.auto_collect = to_bool(w, k, v); }},
        {"out", [](RunConfig &c, auto &, auto &, auto &v) { c.out = v; }},
    };
    return table;
}

std::string exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

DetectorParams RunConfig::detector() const {
    const double scale = angular ? kTwoPi * 1e6 : 1e6;
    DetectorParams p;
    p.g = g_mhz * scale;
    p.n_ions = n_ions;
    p.kappa = kappa_mhz * scale;
    p.gamma = gamma_mhz * scale;
    p.tau_d = tau_d_s;
    p.gamma_ps = gamma_ps_mhz * scale;
    p.solid_angle_fraction = solid_angle_fraction;
    p.eta_detector = eta_detector;
    p.finesse = finesse;
    return p;
}

double RunConfig::effective_cooperativity() const {
    return cooperativity ? *cooperativity : ionpnr::cooperativity(detector());
}

double RunConfig::effective_eta() const {
    return eta ? *eta : conversion_efficiency(effective_cooperativity());
}

FluorescenceModel RunConfig::model() const {
    return FluorescenceModel::from_detector(detector(), effective_eta(), n_residual);
}

ProtocolBudget RunConfig::budget() const {
    return {t_init_us * 1e-6, t_storage_us * 1e-6, t_collect_us * 1e-6, t_recool_us * 1e-6};
}

std::vector<double> RunConfig::time_grid() const {
    std::vector<double> grid;
    if (!(t_step_us > 0.0) || t_stop_us < t_start_us) return grid;
    const auto n = static_cast<std::int64_t>(std::floor((t_stop_us - t_start_us) / t_step_us + 1e-9));
    grid.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = 0; i <= n; ++i) grid.push_back((t_start_us + static_cast<double>(i) * t_step_us) * 1e-6);
    return grid;
}

void RunConfig::validate() const {
    try {
        detector().validate();
        if (cooperativity && *cooperativity < 0.0) throw ConfigError("field 'cooperativity' must be >= 0");
        model();
        budget().validate();
    } catch (const InvalidParameter &e) {
        throw ConfigError(e.what());
    }
    if (n_max < 1) throw ConfigError("field 'n_max' must be >= 1");
    if (!(p_target > 0.0 && p_target < 1.0)) throw ConfigError("field 'p_target' must lie in (0, 1)");
    if (!(floor_tolerance > 0.0 && floor_tolerance < 1.0)) {
        throw ConfigError("field 'floor_tolerance' must lie in (0, 1)");
    }
    if (t_us < 0.0) throw ConfigError("field 't_us' must be >= 0");
    if (!(t_step_us > 0.0)) throw ConfigError("field 't_step_us' must be > 0");
    if (!(t_start_us > 0.0)) throw ConfigError("field 't_start_us' must be > 0");
    if (t_stop_us < t_start_us) throw ConfigError("time grid is empty: t_stop_us < t_start_us");
    if (n_in.empty()) throw ConfigError("field 'n_in' must list at least one photon number");
    for (std::int64_t n : n_in) {
        if (n < 0) throw ConfigError("field 'n_in': photon numbers must be >= 0");
    }
    if (trials < 1) throw ConfigError("field 'trials' must be >= 1");
}

const std::vector<std::string> &required_file_keys() {
    static const std::vector<std::string> keys = {"g_mhz",        "n_ions",   "kappa_mhz",
                                                  "gamma_mhz",    "gamma_ps_mhz", "tau_d_s",
                                                  "solid_angle_fraction", "eta_detector"};
    return keys;
}

void set_field(RunConfig &cfg, const std::string &key, const std::string &value, const std::string &where) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(prefix(where) + "unknown field '" + key + "'");
    it->second(cfg, where, key, value);
}

RunConfig parse_config(std::istream &in, const std::string &source_name) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = source_name + ":" + std::to_string(line_no);
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find_first_of("=:");
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value' or 'key: value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError(where + ": field '" + key + "' given twice");
        set_field(cfg, key, value, where);
    }
    for (const std::string &key : required_file_keys()) {
        if (!seen.contains(key)) throw ConfigError(source_name + ": missing required field '" + key + "'");
    }
    return cfg;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

void apply_overrides(RunConfig &cfg, const std::vector<std::pair<std::string, std::string>> &overrides) {
    for (const auto &[key, value] : overrides) set_field(cfg, key, value, "command line");
    cfg.validate();
}

void dump_config(const RunConfig &cfg, std::ostream &out) {
    auto opt = [](const std::optional<double> &v) { return v ? exact(*v) : std::string("none"); };
    std::string n_in;
    for (std::size_t i = 0; i < cfg.n_in.size(); ++i) n_in += (i ? "," : "") + std::to_string(cfg.n_in[i]);

    out << "# detector (frequencies in MHz; angular = true means 2pi x MHz)\n"
        << "angular = " << (cfg.angular ? "true" : "false") << '\n'
        << "g_mhz = " << exact(cfg.g_mhz) << '\n'
        << "n_ions = " << cfg.n_ions << '\n'
        << "kappa_mhz = " << exact(cfg.kappa_mhz) << '\n'
        << "gamma_mhz = " << exact(cfg.gamma_mhz) << '\n'
        << "gamma_ps_mhz = " << exact(cfg.gamma_ps_mhz) << '\n'
        << "tau_d_s = " << exact(cfg.tau_d_s) << '\n'
        << "solid_angle_fraction = " << exact(cfg.solid_angle_fraction) << '\n'
        << "eta_detector = " << exact(cfg.eta_detector) << '\n'
        << "finesse = " << opt(cfg.finesse) << '\n'
        << "cooperativity = " << opt(cfg.cooperativity) << '\n'
        << "eta = " << opt(cfg.eta) << '\n'
        << "n_residual = " << cfg.n_residual << '\n'
        << "# estimator\n"
        << "n_max = " << cfg.n_max << '\n'
        << "p_target = " << exact(cfg.p_target) << '\n'
        << "floor_tolerance = " << exact(cfg.floor_tolerance) << '\n'
        << "# time grid (microseconds)\n"
        << "t_us = " << exact(cfg.t_us) << '\n'
        << "t_start_us = " << exact(cfg.t_start_us) << '\n'
        << "t_stop_us = " << exact(cfg.t_stop_us) << '\n'
        << "t_step_us = " << exact(cfg.t_step_us) << '\n'
        << "n_in = " << n_in << '\n'
        << "# monte carlo\n"
        << "trials = " << cfg.trials << '\n'
        << "seed = " << cfg.seed << '\n'
        << "sampling = " << (cfg.sampling == SamplingPath::kPerIon ? "per-ion" : "aggregate") << '\n'
        << "threads = " << cfg.threads << '\n'
        << "# protocol budget (microseconds)\n"
        << "t_init_us = " << exact(cfg.t_init_us) << '\n'
        << "t_storage_us = " << exact(cfg.t_storage_us) << '\n'
        << "t_collect_us = " << exact(cfg.t_collect_us) << '\n'
        << "t_recool_us = " << exact(cfg.t_recool_us) << '\n'
        << "auto_collect = " << (cfg.auto_collect ? "true" : "false") << '\n'
        << "out = " << cfg.out << '\n';
}

}  // namespace ionpnr::cli
