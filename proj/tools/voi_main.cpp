#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "voi/config.hpp"
#include "voi/report.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidInput = 2;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed_override;
    int threads = 0;
};

void add_common_options(CLI::App& cmd, CommonOptions& options) {
    cmd.add_option("--config", options.config_path, "path to the JSON run configuration")
        ->required();
    cmd.add_option("--out", options.out_path,
                   "write the output to this file instead of standard output");
    cmd.add_option("--seed", options.seed_override, "override sim.seed from the config");
    cmd.add_option("--threads", options.threads,
                   "worker threads for the simulation commands (0 = hardware default)");
}

voi::cli::RunConfig load(const CommonOptions& options) {
    voi::cli::RunConfig config = voi::cli::load_config(options.config_path);
    if (options.seed_override.has_value()) {
        config.sim = voi::sim::SimConfig(config.sim.replications(), config.sim.inner_draws(),
                                         *options.seed_override, config.sim.n_grid());
    }
    return config;
}

void emit(const std::string& text, const CommonOptions& options) {
    if (options.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(options.out_path, std::ios::binary);
    if (!out) {
        throw voi::cli::ConfigError("--out", "cannot open '" + options.out_path +
                                                 "' for writing");
    }
    out << text;
    if (!out) {
        throw voi::cli::ConfigError("--out", "failed writing '" + options.out_path + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"value-of-information toolkit for Dirichlet-multinomial demand models"};
    app.require_subcommand(1);

    CommonOptions value_options;
    std::int64_t value_n = 0;
    CLI::App* value_cmd =
        app.add_subcommand("value", "closed-form EVSI/EVDI record at one sample size");
    add_common_options(*value_cmd, value_options);
    value_cmd->add_option("--n", value_n, "sample size to value (default 0)");

    CommonOptions curve_options;
    CLI::App* curve_cmd =
        app.add_subcommand("curve", "CSV of evsi/evdi/efficiency over the configured grid");
    add_common_options(*curve_cmd, curve_options);

    CommonOptions optimal_n_options;
    CLI::App* optimal_n_cmd =
        app.add_subcommand("optimal-n", "optimal sample size under linear sampling cost");
    add_common_options(*optimal_n_cmd, optimal_n_options);

    CommonOptions plan_options;
    CLI::App* plan_cmd =
        app.add_subcommand("plan", "optimal changeover period for a selling season");
    add_common_options(*plan_cmd, plan_options);

    CommonOptions verify_options;
    double closed_form_skew = 1.0;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Monte Carlo cross-check of the closed forms over the configured grid");
    add_common_options(*verify_cmd, verify_options);
    verify_cmd
        ->add_option("--inject-evsi-error", closed_form_skew,
                     "rescale the closed form under test (detector self-check)")
        ->group("");

    CommonOptions benchmark_options;
    CLI::App* benchmark_cmd =
        app.add_subcommand("benchmark", "score updating procedures on simulated truths (CSV)");
    add_common_options(*benchmark_cmd, benchmark_options);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidInput;
    }

    try {
        if (value_cmd->parsed()) {
            if (value_n < 0) {
                throw voi::cli::ConfigError("--n", "must be nonnegative");
            }
            const voi::cli::RunConfig config = load(value_options);
            emit(voi::cli::value_record(config, value_n), value_options);
        } else if (curve_cmd->parsed()) {
            const voi::cli::RunConfig config = load(curve_options);
            emit(voi::cli::curve_csv(config), curve_options);
        } else if (optimal_n_cmd->parsed()) {
            const voi::cli::RunConfig config = load(optimal_n_options);
            emit(voi::cli::optimal_n_record(config), optimal_n_options);
        } else if (plan_cmd->parsed()) {
            const voi::cli::RunConfig config = load(plan_options);
            const std::string record = voi::cli::plan_record(config);
            emit(record, plan_options);
            if (record.find("j_star=0\n") != std::string::npos) {
                std::cerr << "note: changeover fee is never recovered; no revision scheduled\n";
            }
        } else if (verify_cmd->parsed()) {
            const voi::cli::RunConfig config = load(verify_options);
            const voi::cli::VerifyOutcome outcome =
                voi::cli::run_verify(config, verify_options.threads, closed_form_skew);
            emit(outcome.csv, verify_options);
            if (!outcome.passed) {
                std::cerr << "verify: closed form and Monte Carlo estimate disagree (|z| > 4)\n";
                return kExitVerifyFailed;
            }
        } else if (benchmark_cmd->parsed()) {
            const voi::cli::RunConfig config = load(benchmark_options);
            const voi::cli::BenchmarkOutcome outcome =
                voi::cli::run_benchmark_csv(config, benchmark_options.threads);
            emit(outcome.csv, benchmark_options);
            if (!outcome.warning.empty()) {
                std::cerr << outcome.warning << '\n';
            }
        }
    } catch (const voi::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return 0;
}
