#include "voi/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voi/core.hpp"

namespace voi::policies {

SamplingCost::SamplingCost(double fixed_cost, double unit_cost)
    : fixed_cost_(fixed_cost), unit_cost_(unit_cost) {
    if (!std::isfinite(fixed_cost_) || fixed_cost_ < 0.0) {
        throw std::invalid_argument("SamplingCost: fixed cost K must be nonnegative");
    }
    if (!std::isfinite(unit_cost_) || !(unit_cost_ > 0.0)) {
        throw std::invalid_argument("SamplingCost: unit cost s must be positive");
    }
}

SeasonSpec::SeasonSpec(std::int64_t periods, double changeover_cost)
    : periods_(periods), changeover_cost_(changeover_cost) {
    if (periods_ < 1) {
        throw std::invalid_argument("SeasonSpec: season length J must be at least 1");
    }
    if (!std::isfinite(changeover_cost_) || changeover_cost_ < 0.0) {
        throw std::invalid_argument("SeasonSpec: changeover cost K must be nonnegative");
    }
}

double total_sampling_cost(const SamplingCost& cost, std::int64_t n) {
    return cost.fixed_cost() + cost.unit_cost() * static_cast<double>(n);
}

double sampling_net_loss(const DirichletPrior& prior, const LossSpec& loss,
                         const SamplingCost& cost, std::int64_t n) {
    return -evsi(prior, loss, n) + total_sampling_cost(cost, n);
}

SampleSizeDecision optimal_sample_size(const DirichletPrior& prior, const LossSpec& loss,
                                       const SamplingCost& cost) {
    const double alpha = prior.concentration();
    const double root = std::sqrt(alpha / (1.0 + alpha) * (loss.scale() / cost.unit_cost()) *
                                  prior.predictive_variance()) -
                        alpha;
    SampleSizeDecision decision;
    decision.continuous_root = root;
    if (!(root > 0.0)) {
        return decision;
    }

    const auto lo = static_cast<std::int64_t>(std::floor(root));
    const auto hi = static_cast<std::int64_t>(std::ceil(root));
    std::int64_t chosen = lo;
    if (hi != lo && sampling_net_loss(prior, loss, cost, hi) <
                        sampling_net_loss(prior, loss, cost, lo)) {
        chosen = hi;
    }
    if (chosen == 0) {
        return decision;
    }

    // The fixed cost is recoverable only when the information value strictly
    // exceeds the total cost of collecting it.
    const double net_value =
        evsi(prior, loss, chosen) - total_sampling_cost(cost, chosen);
    if (!(net_value > 0.0)) {
        return decision;
    }
    decision.n_star = chosen;
    decision.net_value = net_value;
    return decision;
}

double season_net_cost(const DirichletPrior& prior, const LossSpec& loss,
                       const SeasonSpec& season, std::int64_t j) {
    if (j < 0 || j > season.periods()) {
        throw std::invalid_argument("season_net_cost: period j must lie in [0, J]");
    }
    if (j == 0) {
        return 0.0;
    }
    const double remaining = static_cast<double>(season.periods() - j);
    return season.changeover_cost() - remaining * evsi(prior, loss, j);
}

ChangeoverDecision optimal_changeover(const DirichletPrior& prior, const LossSpec& loss,
                                      const SeasonSpec& season) {
    const double alpha = prior.concentration();
    const double horizon = static_cast<double>(season.periods());
    const double root = std::sqrt(alpha * (horizon + alpha)) - alpha;

    ChangeoverDecision decision;
    decision.continuous_root = root;

    // root lies strictly inside (0, J); clamping only matters when it falls
    // below 1.
    const std::int64_t lo = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::floor(root)), 1, season.periods());
    const std::int64_t hi = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::ceil(root)), 1, season.periods());

    std::int64_t chosen = lo;
    double chosen_cost = season_net_cost(prior, loss, season, lo);
    if (hi != lo) {
        const double hi_cost = season_net_cost(prior, loss, season, hi);
        if (hi_cost < chosen_cost) {
            chosen = hi;
            chosen_cost = hi_cost;
        }
    }
    if (!(chosen_cost < 0.0)) {
        return decision;
    }
    decision.j_star = chosen;
    decision.cost = chosen_cost;
    return decision;
}

}  // namespace voi::policies
