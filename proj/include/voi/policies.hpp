#pragma once

#include <cstdint>

#include "voi/types.hpp"

namespace voi::policies {

// Linear sampling cost C(n) = K + s * n with fixed cost K >= 0 and a
// strictly positive per-observation cost s.
class SamplingCost {
public:
    SamplingCost(double fixed_cost, double unit_cost);

    double fixed_cost() const noexcept { return fixed_cost_; }
    double unit_cost() const noexcept { return unit_cost_; }

private:
    double fixed_cost_;
    double unit_cost_;
};

// Selling season of J periods with per-period demand shared across periods
// and a changeover fee K for revising the order quantity mid-season.
class SeasonSpec {
public:
    SeasonSpec(std::int64_t periods, double changeover_cost);

    std::int64_t periods() const noexcept { return periods_; }
    double changeover_cost() const noexcept { return changeover_cost_; }

private:
    std::int64_t periods_;
    double changeover_cost_;
};

struct SampleSizeDecision {
    std::int64_t n_star = 0;       // chosen sample size; 0 means do not sample
    double net_value = 0.0;        // evsi(n_star) - cost(n_star); 0 when n_star == 0
    double continuous_root = 0.0;  // unrounded stationary point of the net loss
};

struct ChangeoverDecision {
    std::int64_t j_star = 0;       // contracted revision period; 0 means never revise
    double cost = 0.0;             // season net cost at j_star; 0 when j_star == 0
    double continuous_root = 0.0;  // unrounded stationary point j0
};

// Total sampling cost K + s * n.
double total_sampling_cost(const SamplingCost& cost, std::int64_t n);

// Net loss of sampling n points: -evsi(n) + K + s * n.
double sampling_net_loss(const DirichletPrior& prior, const LossSpec& loss,
                         const SamplingCost& cost, std::int64_t n);

// Minimizes sampling_net_loss over nonnegative integers. The continuous
// stationary point is
//   sqrt(alpha / (1 + alpha) * k / s * (c2 - c1^2)) - alpha;
// when it is positive the better of its floor/ceiling is kept (ties to the
// smaller n), and the decision falls back to n = 0 unless the information
// value strictly exceeds the total cost.
SampleSizeDecision optimal_sample_size(const DirichletPrior& prior, const LossSpec& loss,
                                       const SamplingCost& cost);

// Net season cost of contracting a revision after period j:
//   0 for j = 0, else K - (J - j) * evsi(j).
// Throws when j is outside [0, J].
double season_net_cost(const DirichletPrior& prior, const LossSpec& loss,
                       const SeasonSpec& season, std::int64_t j);

// Minimizes season_net_cost over j in {0, ..., J}. The continuous stationary
// point is j0 = sqrt(alpha * (J + alpha)) - alpha; its floor/ceiling (clamped
// to [1, J], ties to the smaller j) is kept only when the resulting cost is
// strictly negative, otherwise no changeover is scheduled.
ChangeoverDecision optimal_changeover(const DirichletPrior& prior, const LossSpec& loss,
                                      const SeasonSpec& season);

}  // namespace voi::policies
