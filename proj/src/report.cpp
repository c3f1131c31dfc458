#include "voi/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "voi/core.hpp"
#include "voi/policies.hpp"

namespace voi::cli {

namespace {

std::string format_integer(std::int64_t value) {
    return std::to_string(value);
}

double z_score(double estimate, double reference, double std_error) {
    if (std_error > 0.0) {
        return (estimate - reference) / std_error;
    }
    return estimate == reference ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

std::string value_record(const RunConfig& config, std::int64_t n) {
    const DirichletPrior& prior = config.prior;
    const LossSpec& loss = config.loss;
    std::ostringstream out;
    out << "M=" << format_integer(prior.max_value()) << '\n'
        << "alpha=" << format_number(prior.concentration()) << '\n'
        << "c1=" << format_number(prior.predictive_mean()) << '\n'
        << "c2=" << format_number(prior.predictive_second_moment()) << '\n'
        << "n=" << format_integer(n) << '\n'
        << "evsi=" << format_number(evsi(prior, loss, n)) << '\n'
        << "evdi=" << format_number(evdi(prior, loss)) << '\n'
        << "efficiency=" << format_number(efficiency(prior, n)) << '\n'
        << "prior_risk=" << format_number(prior_bayes_risk(prior, loss)) << '\n'
        << "preposterior_loss=" << format_number(preposterior_expected_loss(prior, loss, n))
        << '\n';
    return out.str();
}

std::string curve_csv(const RunConfig& config) {
    const DirichletPrior& prior = config.prior;
    const LossSpec& loss = config.loss;
    const double distribution_value = evdi(prior, loss);
    std::ostringstream out;
    out << "n,evsi,evdi,efficiency\n";
    for (const std::int64_t n : config.sim.n_grid()) {
        out << format_integer(n) << ',' << format_number(evsi(prior, loss, n)) << ','
            << format_number(distribution_value) << ',' << format_number(efficiency(prior, n))
            << '\n';
    }
    return out.str();
}

std::string optimal_n_record(const RunConfig& config) {
    if (!config.cost.has_value()) {
        throw ConfigError("cost", "required for optimal-n");
    }
    const policies::SampleSizeDecision decision =
        policies::optimal_sample_size(config.prior, config.loss, *config.cost);
    const double information_value = evsi(config.prior, config.loss, decision.n_star);
    const double cost = decision.n_star > 0
                            ? policies::total_sampling_cost(*config.cost, decision.n_star)
                            : 0.0;
    std::ostringstream out;
    out << "continuous_root=" << format_number(decision.continuous_root) << '\n'
        << "n_star=" << format_integer(decision.n_star) << '\n'
        << "evsi_at_n_star=" << format_number(information_value) << '\n'
        << "total_cost=" << format_number(cost) << '\n'
        << "net_value=" << format_number(decision.net_value) << '\n';
    return out.str();
}

std::string plan_record(const RunConfig& config) {
    if (!config.season.has_value()) {
        throw ConfigError("season", "required for plan");
    }
    const policies::ChangeoverDecision decision =
        policies::optimal_changeover(config.prior, config.loss, *config.season);
    std::ostringstream out;
    out << "j0=" << format_number(decision.continuous_root) << '\n'
        << "j_star=" << format_integer(decision.j_star) << '\n'
        << "cost_at_j_star=" << format_number(decision.cost) << '\n';
    return out.str();
}

VerifyOutcome run_verify(const RunConfig& config, int threads, double closed_form_skew) {
    const DirichletPrior& prior = config.prior;
    const LossSpec& loss = config.loss;
    VerifyOutcome outcome;
    for (const std::int64_t n : config.sim.n_grid()) {
        const double reference = evsi(prior, loss, n) * closed_form_skew;
        const sim::MonteCarloEstimate estimate =
            sim::estimate_evsi(prior, loss, n, config.sim, threads);
        VerifyRow evsi_row;
        evsi_row.n = n;
        evsi_row.check = "evsi";
        evsi_row.closed_form = reference;
        evsi_row.estimate = estimate.value;
        evsi_row.std_error = estimate.std_error;
        evsi_row.z = z_score(estimate.value, reference, estimate.std_error);
        outcome.rows.push_back(evsi_row);

        const sim::TotalVarianceCheck check =
            sim::verify_total_variance(prior, n, config.sim, threads);
        VerifyRow variance_row;
        variance_row.n = n;
        variance_row.check = "total_variance";
        variance_row.closed_form = check.total_variance;
        variance_row.estimate = check.within_component + check.between_component;
        variance_row.std_error = check.residual_std_error;
        variance_row.z =
            z_score(variance_row.estimate, variance_row.closed_form, variance_row.std_error);
        outcome.rows.push_back(variance_row);
    }

    std::ostringstream out;
    out << "n,check,closed_form,estimate,std_error,z\n";
    for (const VerifyRow& row : outcome.rows) {
        out << format_integer(row.n) << ',' << row.check << ',' << format_number(row.closed_form)
            << ',' << format_number(row.estimate) << ',' << format_number(row.std_error) << ','
            << format_number(row.z) << '\n';
        if (std::abs(row.z) > 4.0) {
            outcome.passed = false;
        }
    }
    outcome.csv = out.str();
    return outcome;
}

BenchmarkOutcome run_benchmark_csv(const RunConfig& config, int threads) {
    BenchmarkOutcome outcome;
    outcome.result =
        sim::run_benchmark(config.prior, config.loss, config.procedures, config.sim, threads);
    const sim::BenchmarkResult& result = outcome.result;

    std::ostringstream out;
    out << "n,procedure,mean_loss,std_error,replications,seed\n";
    for (std::size_t g = 0; g < result.n_grid.size(); ++g) {
        for (const sim::ProcedureCurve& curve : result.curves) {
            out << format_integer(result.n_grid[g]) << ',' << sim::to_string(curve.procedure)
                << ',' << format_number(curve.mean_loss[g]) << ','
                << format_number(curve.std_error[g]) << ','
                << format_integer(result.replications) << ',' << std::to_string(result.seed)
                << '\n';
        }
    }
    outcome.csv = out.str();
    if (result.saa_empty_sample_fallback) {
        outcome.warning =
            "note: SAA scored at n=0 uses the midpoint action M/2 (an empty sample has no "
            "average)";
    }
    return outcome;
}

}  // namespace voi::cli
