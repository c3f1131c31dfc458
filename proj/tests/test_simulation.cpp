#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "test_support.hpp"
#include "voi/core.hpp"
#include "voi/rng.hpp"
#include "voi/simulation.hpp"

using namespace voi;
using namespace voi::sim;
using test::zero_inflated_prior;

namespace {

struct SampleStats {
    double mean = 0.0;
    double std_error = 0.0;
};

SampleStats stats_of(const std::vector<double>& values) {
    SampleStats s;
    const double count = static_cast<double>(values.size());
    for (const double v : values) {
        s.mean += v;
    }
    s.mean /= count;
    double squares = 0.0;
    for (const double v : values) {
        squares += (v - s.mean) * (v - s.mean);
    }
    s.std_error = std::sqrt(squares / (count - 1.0) / count);
    return s;
}

double z_against(const SampleStats& s, double reference) {
    return (s.mean - reference) / s.std_error;
}

}  // namespace

TEST_CASE("sim config validation") {
    CHECK_THROWS_AS(SimConfig(0, 10, 1, {1}), std::invalid_argument);
    CHECK_THROWS_AS(SimConfig(10, 0, 1, {1}), std::invalid_argument);
    CHECK_THROWS_AS(SimConfig(10, 10, 1, {}), std::invalid_argument);
    CHECK_THROWS_AS(SimConfig(10, 10, 1, {2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SimConfig(10, 10, 1, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SimConfig(10, 10, 1, {-1, 4}), std::invalid_argument);
}

TEST_CASE("procedure names round-trip") {
    CHECK(to_string(UpdatingProcedure::bayes) == "BAYES");
    CHECK(to_string(UpdatingProcedure::saa) == "SAA");
    CHECK(parse_procedure("BAYES") == UpdatingProcedure::bayes);
    CHECK(parse_procedure("SAA") == UpdatingProcedure::saa);
    CHECK_THROWS_AS(parse_procedure("KAPLAN"), std::invalid_argument);
}

TEST_CASE("uniform and gamma variates look like themselves") {
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        const double u = uniform01(rng);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = uniform_open01(rng);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
    for (const double shape : {0.4, 1.0, 3.7, 19.0}) {
        std::vector<double> draws(50000);
        for (double& d : draws) {
            d = gamma_variate(rng, shape);
            CHECK(d >= 0.0);
        }
        const SampleStats s = stats_of(draws);
        CHECK(std::abs(z_against(s, shape)) <= 4.0);
    }
    CHECK_THROWS_AS(gamma_variate(rng, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gamma_variate(rng, -1.0), std::invalid_argument);
}

TEST_CASE("dirichlet draws live on the simplex and match the prior moments") {
    const DirichletPrior prior = zero_inflated_prior();
    const double alpha = prior.concentration();
    const std::size_t dims = prior.support_size();
    const int draws = 100000;

    Rng rng = stream_rng(42, 0, 0);
    std::vector<std::vector<double>> components(dims, std::vector<double>(draws));
    std::vector<double> squares_first(draws);
    std::vector<double> cross(draws);
    for (int i = 0; i < draws; ++i) {
        const DataDistribution t = sample_dirichlet(prior, rng);
        for (std::size_t d = 0; d < dims; ++d) {
            components[d][static_cast<std::size_t>(i)] = t.probs()[d];
        }
        squares_first[static_cast<std::size_t>(i)] = t.probs()[0] * t.probs()[0];
        cross[static_cast<std::size_t>(i)] = t.probs()[0] * t.probs()[3];
    }

    for (std::size_t d = 0; d < dims; ++d) {
        const double expected = prior.alphas()[d] / alpha;
        CHECK(std::abs(z_against(stats_of(components[d]), expected)) <= 3.0);
    }
    // E[t_0^2] = alpha_0 (alpha_0 + 1) / (alpha (alpha + 1))
    const double a0 = prior.alphas()[0];
    const double expected_square = a0 * (a0 + 1.0) / (alpha * (alpha + 1.0));
    CHECK(std::abs(z_against(stats_of(squares_first), expected_square)) <= 3.0);
    // E[t_0 t_3] = alpha_0 alpha_3 / (alpha (alpha + 1))
    const double expected_cross = a0 * prior.alphas()[3] / (alpha * (alpha + 1.0));
    CHECK(std::abs(z_against(stats_of(cross), expected_cross)) <= 3.0);
}

TEST_CASE("symmetric two-point dirichlet draws average one half") {
    const DirichletPrior prior({1.0, 1.0});
    Rng rng = stream_rng(7, 0, 1);
    std::vector<double> first(100000);
    for (double& v : first) {
        v = sample_dirichlet(prior, rng).probs()[0];
    }
    CHECK(std::abs(stats_of(first).mean - 0.5) <= 0.005);
}

TEST_CASE("multinomial draws count what was drawn") {
    Rng rng = stream_rng(21, 0, 2);

    const DataDistribution degenerate({0.0, 0.0, 0.0, 1.0, 0.0, 0.0});
    const SampleCounts counts = sample_counts(degenerate, 5, rng);
    CHECK(counts.counts() == std::vector<std::int64_t>{0, 0, 0, 5, 0, 0});

    const DataDistribution coin({0.5, 0.5});
    const SampleCounts big = sample_counts(coin, 100000, rng);
    CHECK(big.total() == 100000);
    CHECK(std::abs(big.sample_mean() - 0.5) <= 0.005);

    CHECK_THROWS_AS(sample_counts(coin, 0, rng), std::invalid_argument);
}

TEST_CASE("sample mean variance matches the multinomial identity") {
    // Var[Z] = (sum d^2 t_d - (sum d t_d)^2) / n for a fixed t.
    const DataDistribution t({0.1, 0.25, 0.3, 0.2, 0.15});
    const std::int64_t n = 40;
    const double expected = t.variance() / static_cast<double>(n);

    Rng rng = stream_rng(5, 0, 3);
    const int replications = 20000;
    std::vector<double> z_values(replications);
    for (double& z : z_values) {
        z = sample_counts(t, n, rng).sample_mean();
    }
    const SampleStats s = stats_of(z_values);
    double centered_fourth = 0.0;
    double variance = 0.0;
    for (const double z : z_values) {
        const double dev = z - s.mean;
        variance += dev * dev;
        centered_fourth += dev * dev * dev * dev;
    }
    variance /= replications - 1;
    centered_fourth /= replications;
    const double variance_std_error =
        std::sqrt((centered_fourth - variance * variance) / replications);
    CHECK(std::abs(variance - expected) <= 3.0 * variance_std_error);
}

TEST_CASE("estimate_evsi recovers the closed form on the worked example") {
    const DirichletPrior prior = zero_inflated_prior();
    const LossSpec loss(5.0);
    const SimConfig config(20000, 2, 42, {3});
    const MonteCarloEstimate estimate = estimate_evsi(prior, loss, 3, config);
    CHECK(estimate.std_error > 0.0);
    CHECK(std::abs(estimate.value - 160.0 / 77.0) <= 3.0 * estimate.std_error);
}

TEST_CASE("estimate_evsi is exactly zero for an empty sample") {
    const MonteCarloEstimate estimate =
        estimate_evsi(zero_inflated_prior(), LossSpec(5.0), 0, SimConfig(1000, 2, 9, {1}));
    CHECK(estimate.value == 0.0);
    CHECK(estimate.std_error == 0.0);
}

TEST_CASE("estimate_evsi recovers the two-point closed form") {
    const DirichletPrior prior({2.0, 3.0});
    const LossSpec loss(1.0);
    const SimConfig config(40000, 2, 1234, {7});
    const MonteCarloEstimate estimate = estimate_evsi(prior, loss, 7, config);
    CHECK(std::abs(estimate.value - 7.0 / 300.0) <= 3.0 * estimate.std_error);
}

TEST_CASE("estimate_evsi tracks the closed form across random configurations") {
    Rng rng(20200);
    int hits = 0;
    const int trials = 30;
    for (int i = 0; i < trials; ++i) {
        const DirichletPrior prior = test::random_prior(rng, 8, 0.2, 6.0);
        const LossSpec loss(test::uniform_in(rng, 0.2, 10.0));
        const std::int64_t n = test::integer_in(rng, 1, 15);
        const SimConfig config(5000, 2, 1000 + static_cast<std::uint64_t>(i), {1});
        const MonteCarloEstimate estimate = estimate_evsi(prior, loss, n, config);
        const double closed = evsi(prior, loss, n);
        if (std::abs(estimate.value - closed) <= 3.0 * estimate.std_error) {
            ++hits;
        }
    }
    CHECK(hits >= trials - 1);
}

TEST_CASE("simulation results are identical across thread counts and differ across seeds") {
    const DirichletPrior prior = zero_inflated_prior();
    const LossSpec loss(5.0);
    const SimConfig config(4000, 50, 77, {0, 2, 5});

    const MonteCarloEstimate serial = estimate_evsi(prior, loss, 5, config, 1);
    const MonteCarloEstimate parallel = estimate_evsi(prior, loss, 5, config, 4);
    CHECK(serial.value == parallel.value);
    CHECK(serial.std_error == parallel.std_error);

    const std::vector<UpdatingProcedure> both{UpdatingProcedure::bayes, UpdatingProcedure::saa};
    const BenchmarkResult one_thread = run_benchmark(prior, loss, both, config, 1);
    const BenchmarkResult three_threads = run_benchmark(prior, loss, both, config, 3);
    for (std::size_t p = 0; p < both.size(); ++p) {
        for (std::size_t g = 0; g < config.n_grid().size(); ++g) {
            CHECK(one_thread.curves[p].mean_loss[g] == three_threads.curves[p].mean_loss[g]);
            CHECK(one_thread.curves[p].std_error[g] == three_threads.curves[p].std_error[g]);
        }
    }

    const SimConfig reseeded(4000, 50, 78, {0, 2, 5});
    const MonteCarloEstimate other = estimate_evsi(prior, loss, 5, reseeded, 1);
    CHECK(other.value != serial.value);

    const TotalVarianceCheck tv_serial = verify_total_variance(prior, 3, config, 1);
    const TotalVarianceCheck tv_parallel = verify_total_variance(prior, 3, config, 4);
    CHECK(tv_serial.residual == tv_parallel.residual);
    CHECK(tv_serial.within_component == tv_parallel.within_component);
}

TEST_CASE("bayes benchmark loss matches the preposterior closed form") {
    const DirichletPrior prior = zero_inflated_prior();
    const LossSpec loss(5.0);
    const SimConfig config(20000, 2, 4242, {0, 1, 4});
    const BenchmarkResult result =
        run_benchmark(prior, loss, {UpdatingProcedure::bayes}, config);
    REQUIRE(result.curves.size() == 1);
    for (std::size_t g = 0; g < result.n_grid.size(); ++g) {
        const double closed = preposterior_expected_loss(prior, loss, result.n_grid[g]);
        CHECK(std::abs(result.curves[0].mean_loss[g] - closed) <=
              3.0 * result.curves[0].std_error[g]);
    }
    CHECK_FALSE(result.saa_empty_sample_fallback);
}

TEST_CASE("bayes dominates saa in the small-sample regime") {
    // Skewed prior on {0..20} with concentration 10.
    std::vector<double> weights{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11,
                                12, 13, 14, 13, 11, 9, 7, 5, 3, 1};
    double total = 0.0;
    for (const double w : weights) {
        total += w;
    }
    for (double& w : weights) {
        w = 10.0 * w / total;
    }
    const DirichletPrior prior(weights);
    const LossSpec loss(1.0);
    const SimConfig config(4000, 2, 99, {0, 1, 2, 5});
    const BenchmarkResult result = run_benchmark(
        prior, loss, {UpdatingProcedure::bayes, UpdatingProcedure::saa}, config);
    CHECK(result.saa_empty_sample_fallback);
    for (std::size_t g = 0; g < result.n_grid.size(); ++g) {
        CHECK(result.curves[0].mean_loss[g] <= result.curves[1].mean_loss[g]);
    }
    // The SAA handicap shrinks as data accumulates (grid is {0, 1, 2, 5}).
    const double gap_n1 = result.curves[1].mean_loss[1] - result.curves[0].mean_loss[1];
    const double gap_n2 = result.curves[1].mean_loss[2] - result.curves[0].mean_loss[2];
    const double gap_n5 = result.curves[1].mean_loss[3] - result.curves[0].mean_loss[3];
    CHECK(gap_n1 > gap_n2);
    CHECK(gap_n2 > gap_n5);
}

TEST_CASE("both procedures approach zero loss under a concentrated prior") {
    std::vector<double> alphas(6, 0.01);
    alphas[2] = 400.0;
    const DirichletPrior prior(alphas);
    const LossSpec loss(1.0);
    const SimConfig config(2000, 2, 17, {5});
    const BenchmarkResult result = run_benchmark(
        prior, loss, {UpdatingProcedure::bayes, UpdatingProcedure::saa}, config);
    CHECK(result.curves[0].mean_loss[0] < 0.05);
    CHECK(result.curves[1].mean_loss[0] < 0.05);
}

TEST_CASE("benchmark rejects empty or duplicated procedure lists") {
    const SimConfig config(10, 2, 1, {1});
    CHECK_THROWS_AS(run_benchmark(zero_inflated_prior(), LossSpec(1.0), {}, config),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        run_benchmark(zero_inflated_prior(), LossSpec(1.0),
                      {UpdatingProcedure::saa, UpdatingProcedure::saa}, config),
        std::invalid_argument);
}

TEST_CASE("total variance decomposition balances on the worked example") {
    const DirichletPrior prior = zero_inflated_prior();
    const SimConfig config(4000, 400, 31, {3});
    const TotalVarianceCheck check = verify_total_variance(prior, 3, config);
    CHECK(check.total_variance == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(check.residual) <= 3.0 * check.residual_std_error);
    CHECK(check.within_component > 0.0);
    CHECK(check.between_component > 0.0);
}

TEST_CASE("total variance decomposition with no sample has no between term") {
    const DirichletPrior prior = zero_inflated_prior();
    const SimConfig config(500, 100, 63, {1});
    const TotalVarianceCheck check = verify_total_variance(prior, 0, config);
    CHECK(check.between_component == 0.0);
    CHECK(check.between_std_error == 0.0);
    CHECK(std::abs(check.residual) <= 3.0 * check.residual_std_error);
}

TEST_CASE("total variance decomposition on a coin-flip prior") {
    const DirichletPrior prior({1.0, 1.0});
    const SimConfig config(4000, 400, 2718, {1});
    const TotalVarianceCheck check = verify_total_variance(prior, 1, config);
    CHECK(check.total_variance == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(check.within_component + check.between_component - 0.25) <=
          3.0 * check.residual_std_error);
}

TEST_CASE("total variance check needs at least two inner draws") {
    const SimConfig config(100, 1, 5, {1});
    CHECK_THROWS_AS(verify_total_variance(zero_inflated_prior(), 3, config),
                    std::invalid_argument);
}
