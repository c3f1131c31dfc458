#pragma once

#include <cstdint>

#include "voi/types.hpp"

namespace voi {

// Prior predictive distribution of a single observation: q(d) = alpha_d / alpha.
DataDistribution marginal_likelihood(const DirichletPrior& prior);

// Conjugate update: Dirichlet(alpha_0 + n_0, ..., alpha_M + n_M).
// Throws when the support lengths differ.
DirichletPrior posterior(const DirichletPrior& prior, const SampleCounts& data);

// Action minimizing the average quadratic risk under the prior: the prior
// predictive mean c1.
double bayes_action(const DirichletPrior& prior);

// Posterior-optimal action (alpha * c1 + n * Z) / (alpha + n); equals c1 for
// an empty sample.
double posterior_bayes_action(const DirichletPrior& prior, const SampleCounts& data);

// Minimum average risk without sampling: k * (c2 - c1^2).
double prior_bayes_risk(const DirichletPrior& prior, const LossSpec& loss);

// Risk of action a when the data distribution is known to be t:
// k * sum_d t_d * (d - a)^2.
double expected_risk(const DataDistribution& t, double action, const LossSpec& loss);

// Expected value of sample information for n observations:
//   k * n * (c2 - c1^2) / ((n + alpha) * (1 + alpha)).
// Nonnegative, nondecreasing in n, bounded by evdi.
double evsi(const DirichletPrior& prior, const LossSpec& loss, std::int64_t n);

// Expected value of knowing the data distribution exactly (the n -> inf
// limit of evsi): k * (c2 - c1^2) / (1 + alpha).
double evdi(const DirichletPrior& prior, const LossSpec& loss);

// Fraction of evdi captured by n observations: n / (n + alpha).
double efficiency(const DirichletPrior& prior, std::int64_t n);

// Expected posterior loss before the sample is drawn:
// prior_bayes_risk - evsi(n).
double preposterior_expected_loss(const DirichletPrior& prior, const LossSpec& loss,
                                  std::int64_t n);

// Independent closed form for a two-point support {0, 1} with Beta(alpha0,
// alpha1) prior:
//   k * n / (n + alpha0 + alpha1) *
//   alpha0 * alpha1 / ((alpha0 + alpha1)^2 * (alpha0 + alpha1 + 1)).
// Kept as a separate route so the general formula can be cross-checked
// against it.
double beta_binomial_evsi(double alpha_zero, double alpha_one, const LossSpec& loss,
                          std::int64_t n);

}  // namespace voi
