// ionpnr: analysis front end for the ion-crystal photon-number-resolving detector.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "ionpnr/errors.h"
#include "run_config.h"

namespace {

using ionpnr::cli::ExitCode;

struct Flags {
    std::string config_path;
    std::string dump_config_path;
    std::string dump_trials_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

// Each typed flag forwards its raw text to the config setter so that file
// values and command-line values go through the same parser.
void forward(CLI::App &app, Flags &flags, const std::string &name, const std::string &key, const std::string &help) {
    app.add_option_function<std::string>(
           name, [&flags, key](const std::string &v) { flags.overrides.emplace_back(key, v); }, help)
        ->trigger_on_parse();
}

std::ostream *open_or_null(const std::string &path, std::unique_ptr<std::ofstream> &holder) {
    if (path.empty()) return nullptr;
    holder = std::make_unique<std::ofstream>(path);
    if (!*holder) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    return holder.get();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Analysis tool for a fluorescence-readout photon-number-resolving detector"};
    app.require_subcommand(1);

    Flags flags;
    app.add_option("--config", flags.config_path, "key = value configuration file");
    app.add_option("--dump-config", flags.dump_config_path, "write the effective configuration to PATH");
    forward(app, flags, "--out", "out", "CSV output path (default: stdout)");
    forward(app, flags, "--seed", "seed", "Monte-Carlo seed");
    forward(app, flags, "--eta", "eta", "conversion efficiency override");
    forward(app, flags, "--cooperativity", "cooperativity", "cooperativity override");
    forward(app, flags, "--n-max", "n_max", "largest photon-number hypothesis");
    forward(app, flags, "--n-in", "n_in", "comma-separated input photon numbers");
    forward(app, flags, "--n-residual", "n_residual", "ions left outside the shelving state");
    forward(app, flags, "--trials", "trials", "Monte-Carlo trials");
    forward(app, flags, "--sampling", "sampling", "per-ion | aggregate");
    forward(app, flags, "--threads", "threads", "worker threads (0 = all cores)");
    forward(app, flags, "--p-target", "p_target", "target error probability");
    forward(app, flags, "--t", "t_us", "collection time, us");
    forward(app, flags, "--t-start", "t_start_us", "grid start, us");
    forward(app, flags, "--t-stop", "t_stop_us", "grid stop, us");
    forward(app, flags, "--t-step", "t_step_us", "grid step, us");
    app.add_flag_callback(
        "--auto-collect", [&flags] { flags.overrides.emplace_back("auto_collect", "true"); },
        "timing: derive the collection time from p_target");
    app.add_option_function<std::vector<std::string>>(
           "--set",
           [&flags](const std::vector<std::string> &items) {
               for (const std::string &item : items) {
                   const auto eq = item.find('=');
                   if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected key=value");
                   flags.overrides.emplace_back(item.substr(0, eq), item.substr(eq + 1));
               }
           },
           "override any config field, key=value")
        ->trigger_on_parse();

    auto *params = app.add_subcommand("params", "derived device quantities");
    auto *pmf = app.add_subcommand("pmf", "fluorescence count distribution (CSV)");
    auto *curve = app.add_subcommand("error-curve", "error probability versus collection time (CSV)");
    auto *thresholds = app.add_subcommand("thresholds", "decision thresholds (CSV)");
    auto *montecarlo = app.add_subcommand("montecarlo", "Monte-Carlo validation of the count model");
    auto *timing = app.add_subcommand("timing", "protocol budget and repetition rate");
    auto *sweep = app.add_subcommand("sweep", "collection time needed per input photon number (CSV)");
    montecarlo->add_option("--dump-trials", flags.dump_trials_path, "write one CSV row per trial");
    for (auto *sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ExitCode::kConfigError;
    }

    ionpnr::cli::RunConfig cfg;
    try {
        if (!flags.config_path.empty()) cfg = ionpnr::cli::load_config(flags.config_path);
        ionpnr::cli::apply_overrides(cfg, flags.overrides);
    } catch (const ionpnr::cli::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ExitCode::kConfigError;
    }

    try {
        if (!flags.dump_config_path.empty()) {
            std::ofstream dump(flags.dump_config_path);
            if (!dump) throw std::ios_base::failure("cannot open '" + flags.dump_config_path + "' for writing");
            ionpnr::cli::dump_config(cfg, dump);
        }

        std::unique_ptr<std::ofstream> out_file;
        std::unique_ptr<std::ofstream> trials_file;
        std::ostream *csv = open_or_null(cfg.out, out_file);
        std::ostream &out = csv != nullptr ? *csv : std::cout;

        if (params->parsed()) return ionpnr::cli::cmd_params(cfg, std::cout);
        if (pmf->parsed()) return ionpnr::cli::cmd_pmf(cfg, out);
        if (curve->parsed()) return ionpnr::cli::cmd_error_curve(cfg, out);
        if (thresholds->parsed()) return ionpnr::cli::cmd_thresholds(cfg, out);
        if (timing->parsed()) return ionpnr::cli::cmd_timing(cfg, std::cout);
        if (sweep->parsed()) return ionpnr::cli::cmd_sweep(cfg, out);
        if (montecarlo->parsed()) {
            return ionpnr::cli::cmd_montecarlo(cfg, std::cout, csv, open_or_null(flags.dump_trials_path, trials_file));
        }
    } catch (const ionpnr::InvalidParameter &e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return ExitCode::kConfigError;
    } catch (const ionpnr::DegenerateHypotheses &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return ExitCode::kNumericalFailure;
    } catch (const std::ios_base::failure &e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return ExitCode::kIoError;
    }
    return ExitCode::kOk;
}
