#include "voi/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace voi {

namespace {

void require_matching_support(const DirichletPrior& prior, const SampleCounts& data) {
    if (prior.support_size() != data.support_size()) {
        throw std::invalid_argument(
            "support length mismatch: prior has " + std::to_string(prior.support_size()) +
            " values, counts have " + std::to_string(data.support_size()));
    }
}

void require_sample_size(std::int64_t n) {
    if (n < 0) {
        throw std::invalid_argument("sample size n must be nonnegative");
    }
}

}  // namespace

DataDistribution marginal_likelihood(const DirichletPrior& prior) {
    std::vector<double> q(prior.support_size());
    const double alpha = prior.concentration();
    for (std::size_t d = 0; d < q.size(); ++d) {
        q[d] = prior.alphas()[d] / alpha;
    }
    return DataDistribution(std::move(q));
}

DirichletPrior posterior(const DirichletPrior& prior, const SampleCounts& data) {
    require_matching_support(prior, data);
    std::vector<double> updated(prior.support_size());
    for (std::size_t d = 0; d < updated.size(); ++d) {
        updated[d] = prior.alphas()[d] + static_cast<double>(data.counts()[d]);
    }
    return DirichletPrior(std::move(updated));
}

double bayes_action(const DirichletPrior& prior) {
    return prior.predictive_mean();
}

double posterior_bayes_action(const DirichletPrior& prior, const SampleCounts& data) {
    require_matching_support(prior, data);
    const std::int64_t n = data.total();
    if (n == 0) {
        return prior.predictive_mean();
    }
    const double alpha = prior.concentration();
    const double nd = static_cast<double>(n);
    return (alpha * prior.predictive_mean() + nd * data.sample_mean()) / (alpha + nd);
}

double prior_bayes_risk(const DirichletPrior& prior, const LossSpec& loss) {
    return loss.scale() * prior.predictive_variance();
}

double expected_risk(const DataDistribution& t, double action, const LossSpec& loss) {
    CompensatedSum acc;
    for (std::size_t d = 0; d < t.support_size(); ++d) {
        const double dev = static_cast<double>(d) - action;
        acc.add(t.probs()[d] * dev * dev);
    }
    return loss.scale() * acc.value();
}

double evsi(const DirichletPrior& prior, const LossSpec& loss, std::int64_t n) {
    require_sample_size(n);
    if (n == 0) {
        return 0.0;
    }
    const double alpha = prior.concentration();
    const double nd = static_cast<double>(n);
    const double scaled_variance = loss.scale() * prior.predictive_variance();
    return scaled_variance * nd / ((nd + alpha) * (1.0 + alpha));
}

double evdi(const DirichletPrior& prior, const LossSpec& loss) {
    const double scaled_variance = loss.scale() * prior.predictive_variance();
    return scaled_variance / (1.0 + prior.concentration());
}

double efficiency(const DirichletPrior& prior, std::int64_t n) {
    require_sample_size(n);
    const double nd = static_cast<double>(n);
    return nd / (nd + prior.concentration());
}

double preposterior_expected_loss(const DirichletPrior& prior, const LossSpec& loss,
                                  std::int64_t n) {
    return prior_bayes_risk(prior, loss) - evsi(prior, loss, n);
}

double beta_binomial_evsi(double alpha_zero, double alpha_one, const LossSpec& loss,
                          std::int64_t n) {
    if (!std::isfinite(alpha_zero) || !(alpha_zero > 0.0) || !std::isfinite(alpha_one) ||
        !(alpha_one > 0.0)) {
        throw std::invalid_argument("beta_binomial_evsi: both shape parameters must be positive");
    }
    require_sample_size(n);
    if (n == 0) {
        return 0.0;
    }
    const double nd = static_cast<double>(n);
    const double total = alpha_zero + alpha_one;
    return loss.scale() * nd / (nd + total) * alpha_zero * alpha_one /
           (total * total * (total + 1.0));
}

}  // namespace voi
