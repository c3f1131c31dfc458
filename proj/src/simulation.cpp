#include "voi/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "voi/core.hpp"

namespace voi::sim {

namespace {

// Stream domains keep the routines decorrelated even when they run under the
// same master seed.
constexpr std::uint64_t kEvsiDomain = 1;
constexpr std::uint64_t kBenchmarkDomain = 2;
constexpr std::uint64_t kTotalVarianceDomain = 3;

int resolve_threads(int requested) {
    if (requested > 0) {
        return std::min(requested, 256);
    }
    const unsigned hardware = std::thread::hardware_concurrency();
    return hardware == 0 ? 1 : static_cast<int>(std::min(hardware, 16u));
}

// Runs body(i) for every index in [0, count), partitioned into contiguous
// blocks. Each index owns its RNG stream and output slot, so the schedule
// cannot change the result.
template <typename Body>
void for_each_index(std::int64_t count, int threads, const Body& body) {
    const int workers = static_cast<int>(
        std::min<std::int64_t>(resolve_threads(threads), std::max<std::int64_t>(count, 1)));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }

    const std::int64_t block = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = static_cast<std::int64_t>(w) * block;
        const std::int64_t end = std::min(count, begin + block);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&, begin, end] {
            try {
                for (std::int64_t i = begin; i < end; ++i) {
                    body(i);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& worker : pool) {
        worker.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

struct MeanStdError {
    double mean = 0.0;
    double std_error = 0.0;
};

// Ordered two-pass reduction; std_error = sample sd / sqrt(count).
MeanStdError reduce_mean_std_error(const std::vector<double>& values) {
    MeanStdError out;
    const auto count = static_cast<double>(values.size());
    CompensatedSum total;
    for (const double v : values) {
        total.add(v);
    }
    out.mean = total.value() / count;
    if (values.size() < 2) {
        return out;
    }
    CompensatedSum squares;
    for (const double v : values) {
        const double dev = v - out.mean;
        squares.add(dev * dev);
    }
    const double sample_variance = squares.value() / (count - 1.0);
    out.std_error = std::sqrt(sample_variance / count);
    return out;
}

std::vector<double> cumulative_probs(const std::vector<double>& probs) {
    std::vector<double> cum(probs.size());
    double running = 0.0;
    for (std::size_t d = 0; d < probs.size(); ++d) {
        running += probs[d];
        cum[d] = running;
    }
    return cum;
}

std::size_t draw_index(const std::vector<double>& cum, Rng& rng) {
    const double u = uniform01(rng);
    std::size_t d = 0;
    while (d + 1 < cum.size() && u >= cum[d]) {
        ++d;
    }
    return d;
}

void require_sample_size(std::int64_t n) {
    if (n < 0) {
        throw std::invalid_argument("sample size n must be nonnegative");
    }
}

}  // namespace

SimConfig::SimConfig(std::int64_t replications, std::int64_t inner_draws, std::uint64_t seed,
                     std::vector<std::int64_t> n_grid)
    : replications_(replications),
      inner_draws_(inner_draws),
      seed_(seed),
      n_grid_(std::move(n_grid)) {
    if (replications_ < 1) {
        throw std::invalid_argument("SimConfig: replications must be at least 1");
    }
    if (inner_draws_ < 1) {
        throw std::invalid_argument("SimConfig: inner_draws must be at least 1");
    }
    if (n_grid_.empty()) {
        throw std::invalid_argument("SimConfig: n_grid must not be empty");
    }
    for (std::size_t i = 0; i < n_grid_.size(); ++i) {
        if (n_grid_[i] < 0) {
            throw std::invalid_argument("SimConfig: n_grid entries must be nonnegative");
        }
        if (i > 0 && n_grid_[i] <= n_grid_[i - 1]) {
            throw std::invalid_argument("SimConfig: n_grid must be strictly increasing");
        }
    }
}

std::string to_string(UpdatingProcedure procedure) {
    switch (procedure) {
        case UpdatingProcedure::bayes:
            return "BAYES";
        case UpdatingProcedure::saa:
            return "SAA";
    }
    throw std::invalid_argument("unknown updating procedure");
}

UpdatingProcedure parse_procedure(std::string_view name) {
    if (name == "BAYES") {
        return UpdatingProcedure::bayes;
    }
    if (name == "SAA") {
        return UpdatingProcedure::saa;
    }
    throw std::invalid_argument("unknown updating procedure '" + std::string(name) +
                                "' (expected BAYES or SAA)");
}

DataDistribution sample_dirichlet(const DirichletPrior& prior, Rng& rng) {
    const auto& alphas = prior.alphas();
    std::vector<double> draws(alphas.size());
    for (int attempt = 0; attempt < 100; ++attempt) {
        double total = 0.0;
        for (std::size_t d = 0; d < alphas.size(); ++d) {
            draws[d] = gamma_variate(rng, alphas[d]);
            total += draws[d];
        }
        if (total > 0.0) {
            for (double& value : draws) {
                value /= total;
            }
            return DataDistribution(std::move(draws));
        }
        // All gamma draws underflowed to zero; retry with fresh randomness.
    }
    throw std::runtime_error("sample_dirichlet: gamma draws underflowed repeatedly");
}

SampleCounts sample_counts(const DataDistribution& t, std::int64_t n, Rng& rng) {
    if (n < 1) {
        throw std::invalid_argument("sample_counts: sample size n must be at least 1");
    }
    const std::vector<double> cum = cumulative_probs(t.probs());
    std::vector<std::int64_t> counts(t.support_size(), 0);
    for (std::int64_t i = 0; i < n; ++i) {
        ++counts[draw_index(cum, rng)];
    }
    return SampleCounts(std::move(counts));
}

MonteCarloEstimate estimate_evsi(const DirichletPrior& prior, const LossSpec& loss,
                                 std::int64_t n, const SimConfig& config, int threads) {
    require_sample_size(n);
    if (n == 0) {
        return MonteCarloEstimate{0.0, 0.0};
    }
    const std::int64_t replications = config.replications();
    std::vector<double> deltas(static_cast<std::size_t>(replications));
    const double prior_action = bayes_action(prior);
    for_each_index(replications, threads, [&](std::int64_t r) {
        Rng rng = stream_rng(config.seed(), kEvsiDomain, static_cast<std::uint64_t>(r));
        const DataDistribution t = sample_dirichlet(prior, rng);
        const SampleCounts x = sample_counts(t, n, rng);
        const double posterior_action = posterior_bayes_action(prior, x);
        deltas[static_cast<std::size_t>(r)] =
            expected_risk(t, prior_action, loss) - expected_risk(t, posterior_action, loss);
    });
    const MeanStdError stats = reduce_mean_std_error(deltas);
    return MonteCarloEstimate{stats.mean, stats.std_error};
}

BenchmarkResult run_benchmark(const DirichletPrior& prior, const LossSpec& loss,
                              const std::vector<UpdatingProcedure>& procedures,
                              const SimConfig& config, int threads) {
    if (procedures.empty()) {
        throw std::invalid_argument("run_benchmark: at least one updating procedure required");
    }
    for (std::size_t i = 0; i < procedures.size(); ++i) {
        for (std::size_t j = i + 1; j < procedures.size(); ++j) {
            if (procedures[i] == procedures[j]) {
                throw std::invalid_argument("run_benchmark: duplicate updating procedure");
            }
        }
    }

    const std::int64_t replications = config.replications();
    const std::size_t grid_size = config.n_grid().size();

    BenchmarkResult result;
    result.n_grid = config.n_grid();
    result.replications = replications;
    result.seed = config.seed();
    result.curves.reserve(procedures.size());
    for (const UpdatingProcedure procedure : procedures) {
        result.curves.push_back(ProcedureCurve{procedure, std::vector<double>(grid_size, 0.0),
                                               std::vector<double>(grid_size, 0.0)});
    }

    const double empty_sample_saa_action = static_cast<double>(prior.max_value()) / 2.0;
    std::vector<std::vector<double>> losses(
        procedures.size(), std::vector<double>(static_cast<std::size_t>(replications), 0.0));

    for (std::size_t grid_index = 0; grid_index < grid_size; ++grid_index) {
        const std::int64_t n = config.n_grid()[grid_index];
        if (n == 0 &&
            std::find(procedures.begin(), procedures.end(), UpdatingProcedure::saa) !=
                procedures.end()) {
            result.saa_empty_sample_fallback = true;
        }
        for_each_index(replications, threads, [&](std::int64_t r) {
            Rng rng = stream_rng(config.seed(), kBenchmarkDomain,
                                 static_cast<std::uint64_t>(grid_index) *
                                         static_cast<std::uint64_t>(replications) +
                                     static_cast<std::uint64_t>(r));
            const DataDistribution t = sample_dirichlet(prior, rng);
            const SampleCounts x =
                n > 0 ? sample_counts(t, n, rng) : SampleCounts::zeros(prior.support_size());
            for (std::size_t p = 0; p < procedures.size(); ++p) {
                double action = 0.0;
                switch (procedures[p]) {
                    case UpdatingProcedure::bayes:
                        action = posterior_bayes_action(prior, x);
                        break;
                    case UpdatingProcedure::saa:
                        action = n > 0 ? x.sample_mean() : empty_sample_saa_action;
                        break;
                }
                losses[p][static_cast<std::size_t>(r)] = expected_risk(t, action, loss);
            }
        });
        for (std::size_t p = 0; p < procedures.size(); ++p) {
            const MeanStdError stats = reduce_mean_std_error(losses[p]);
            result.curves[p].mean_loss[grid_index] = stats.mean;
            result.curves[p].std_error[grid_index] = stats.std_error;
        }
    }
    return result;
}

TotalVarianceCheck verify_total_variance(const DirichletPrior& prior, std::int64_t n,
                                         const SimConfig& config, int threads) {
    require_sample_size(n);
    if (config.inner_draws() < 2) {
        throw std::invalid_argument(
            "verify_total_variance: inner_draws must be at least 2 to form a sample variance");
    }

    const std::int64_t replications = config.replications();
    const std::int64_t inner = config.inner_draws();
    std::vector<double> within(static_cast<std::size_t>(replications), 0.0);
    std::vector<double> between(static_cast<std::size_t>(replications), 0.0);
    const double prior_mean = prior.predictive_mean();

    for_each_index(replications, threads, [&](std::int64_t r) {
        Rng rng = stream_rng(config.seed(), kTotalVarianceDomain, static_cast<std::uint64_t>(r));
        const DataDistribution t = sample_dirichlet(prior, rng);
        const SampleCounts x =
            n > 0 ? sample_counts(t, n, rng) : SampleCounts::zeros(prior.support_size());
        const DirichletPrior updated = posterior(prior, x);
        const DataDistribution predictive = marginal_likelihood(updated);

        // Inner posterior-predictive draws of the next observation; the
        // outcomes are small integers, so the moment sums are exact.
        const std::vector<double> cum = cumulative_probs(predictive.probs());
        std::int64_t sum = 0;
        std::int64_t sum_sq = 0;
        for (std::int64_t i = 0; i < inner; ++i) {
            const auto value = static_cast<std::int64_t>(draw_index(cum, rng));
            sum += value;
            sum_sq += value * value;
        }
        const double inner_count = static_cast<double>(inner);
        const double sum_d = static_cast<double>(sum);
        const double sample_variance =
            (static_cast<double>(sum_sq) - sum_d * sum_d / inner_count) / (inner_count - 1.0);

        within[static_cast<std::size_t>(r)] = sample_variance;
        const double mean_shift = updated.predictive_mean() - prior_mean;
        between[static_cast<std::size_t>(r)] = mean_shift * mean_shift;
    });

    const MeanStdError within_stats = reduce_mean_std_error(within);
    const MeanStdError between_stats = reduce_mean_std_error(between);

    std::vector<double> combined(static_cast<std::size_t>(replications), 0.0);
    for (std::size_t r = 0; r < combined.size(); ++r) {
        combined[r] = within[r] + between[r];
    }
    const MeanStdError combined_stats = reduce_mean_std_error(combined);

    TotalVarianceCheck check;
    check.total_variance = prior.predictive_variance();
    check.within_component = within_stats.mean;
    check.within_std_error = within_stats.std_error;
    check.between_component = between_stats.mean;
    check.between_std_error = between_stats.std_error;
    check.residual = check.total_variance - combined_stats.mean;
    check.residual_std_error = combined_stats.std_error;
    return check;
}

}  // namespace voi::sim
