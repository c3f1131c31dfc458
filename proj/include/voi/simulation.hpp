#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "voi/rng.hpp"
#include "voi/types.hpp"

namespace voi::sim {

// Replication plan for the Monte Carlo routines. Identical configs produce
// bit-identical results no matter how many worker threads execute them.
class SimConfig {
public:
    SimConfig(std::int64_t replications, std::int64_t inner_draws, std::uint64_t seed,
              std::vector<std::int64_t> n_grid);

    std::int64_t replications() const noexcept { return replications_; }
    std::int64_t inner_draws() const noexcept { return inner_draws_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::vector<std::int64_t>& n_grid() const noexcept { return n_grid_; }

private:
    std::int64_t replications_;
    std::int64_t inner_draws_;
    std::uint64_t seed_;
    std::vector<std::int64_t> n_grid_;
};

enum class UpdatingProcedure {
    bayes,  // act on the posterior predictive mean
    saa,    // act on the plain sample average
};

std::string to_string(UpdatingProcedure procedure);
UpdatingProcedure parse_procedure(std::string_view name);

// One draw from the prior over data distributions.
DataDistribution sample_dirichlet(const DirichletPrior& prior, Rng& rng);

// Multinomial draw of n observations from t, returned as counts. n >= 1.
SampleCounts sample_counts(const DataDistribution& t, std::int64_t n, Rng& rng);

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// First-principles estimate of the value of an n-point sample: per
// replication draw t from the prior, draw counts from t, and score the risk
// reduction of moving from the prior action to the posterior action. The
// risk at a known t is evaluated exactly, so no inner demand sampling is
// needed. n = 0 yields exactly {0, 0}.
MonteCarloEstimate estimate_evsi(const DirichletPrior& prior, const LossSpec& loss,
                                 std::int64_t n, const SimConfig& config, int threads = 0);

struct ProcedureCurve {
    UpdatingProcedure procedure;
    std::vector<double> mean_loss;  // one entry per grid point
    std::vector<double> std_error;
};

struct BenchmarkResult {
    std::vector<std::int64_t> n_grid;
    std::vector<ProcedureCurve> curves;
    std::int64_t replications = 0;
    std::uint64_t seed = 0;
    // True when SAA was scored at n = 0, where its action is pinned to the
    // midpoint M/2 because an empty sample has no average.
    bool saa_empty_sample_fallback = false;
};

// Scores each updating procedure on freshly simulated truths: per grid point
// and replication, draw t from the prior, draw counts of that size, act per
// procedure, and record the exact risk of the action under t. All procedures
// share the same draws within a replication.
BenchmarkResult run_benchmark(const DirichletPrior& prior, const LossSpec& loss,
                              const std::vector<UpdatingProcedure>& procedures,
                              const SimConfig& config, int threads = 0);

struct TotalVarianceCheck {
    double total_variance = 0.0;      // marginal Var[D], closed form
    double within_component = 0.0;    // estimate of E_X[Var[D | X]]
    double within_std_error = 0.0;
    double between_component = 0.0;   // estimate of Var_X[E[D | X]]
    double between_std_error = 0.0;
    double residual = 0.0;            // total - (within + between)
    double residual_std_error = 0.0;
};

// Empirically decomposes the marginal variance of a future observation into
// its expected-posterior-variance and variance-of-posterior-mean components.
// The within term is estimated from inner_draws posterior-predictive draws
// per replication (inner_draws >= 2); the between term uses the exact
// posterior mean, so it is identically zero at n = 0.
TotalVarianceCheck verify_total_variance(const DirichletPrior& prior, std::int64_t n,
                                         const SimConfig& config, int threads = 0);

}  // namespace voi::sim
