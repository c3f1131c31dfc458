#include "voi/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace voi {

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument(message);
}

}  // namespace

DirichletPrior::DirichletPrior(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.size() < 2) {
        fail("DirichletPrior: need at least two support values (M >= 1)");
    }
    CompensatedSum total;
    CompensatedSum first;
    CompensatedSum second;
    for (std::size_t d = 0; d < alphas_.size(); ++d) {
        const double a = alphas_[d];
        if (!std::isfinite(a) || !(a > 0.0)) {
            fail("DirichletPrior: alphas[" + std::to_string(d) +
                 "] must be a positive finite number");
        }
        const double dv = static_cast<double>(d);
        total.add(a);
        first.add(dv * a);
        second.add(dv * dv * a);
    }
    concentration_ = total.value();
    predictive_mean_ = first.value() / concentration_;
    predictive_second_moment_ = second.value() / concentration_;

    // Spread around the computed mean; every term is nonnegative, so the
    // variance cannot round below zero the way c2 - c1^2 can.
    CompensatedSum spread;
    for (std::size_t d = 0; d < alphas_.size(); ++d) {
        const double dev = static_cast<double>(d) - predictive_mean_;
        spread.add(alphas_[d] * dev * dev);
    }
    predictive_variance_ = spread.value() / concentration_;
}

std::vector<double> DirichletPrior::mean_weights() const {
    std::vector<double> m(alphas_.size());
    for (std::size_t d = 0; d < alphas_.size(); ++d) {
        m[d] = alphas_[d] / concentration_;
    }
    return m;
}

SampleCounts::SampleCounts(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
    if (counts_.size() < 2) {
        fail("SampleCounts: need at least two support values (M >= 1)");
    }
    for (std::size_t d = 0; d < counts_.size(); ++d) {
        if (counts_[d] < 0) {
            fail("SampleCounts: counts[" + std::to_string(d) + "] must be nonnegative");
        }
        total_ += counts_[d];
        weighted_total_ += static_cast<std::int64_t>(d) * counts_[d];
    }
}

SampleCounts SampleCounts::zeros(std::size_t support_size) {
    return SampleCounts(std::vector<std::int64_t>(support_size, 0));
}

double SampleCounts::sample_mean() const {
    if (total_ == 0) {
        fail("SampleCounts: sample mean is undefined for an empty sample");
    }
    return static_cast<double>(weighted_total_) / static_cast<double>(total_);
}

DataDistribution::DataDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) {
        fail("DataDistribution: need at least two support values (M >= 1)");
    }
    CompensatedSum total;
    CompensatedSum first;
    for (std::size_t d = 0; d < probs_.size(); ++d) {
        const double p = probs_[d];
        if (!std::isfinite(p) || p < 0.0) {
            fail("DataDistribution: probs[" + std::to_string(d) +
                 "] must be a nonnegative finite number");
        }
        total.add(p);
        first.add(static_cast<double>(d) * p);
    }
    if (std::abs(total.value() - 1.0) > 1e-12) {
        fail("DataDistribution: probabilities must sum to 1 within 1e-12");
    }
    mean_ = first.value();
    CompensatedSum spread;
    for (std::size_t d = 0; d < probs_.size(); ++d) {
        const double dev = static_cast<double>(d) - mean_;
        spread.add(probs_[d] * dev * dev);
    }
    variance_ = spread.value();
}

LossSpec::LossSpec(double scale) : scale_(scale) {
    if (!std::isfinite(scale_) || !(scale_ > 0.0)) {
        fail("LossSpec: scale k must be a positive finite number");
    }
}

}  // namespace voi
