#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace voi {

// Neumaier-compensated accumulator. The moment sums over the support feed
// directly into variance-style differences, so they are kept compensated
// regardless of support size.
class CompensatedSum {
public:
    void add(double value) noexcept {
        const double t = sum_ + value;
        if ((sum_ >= 0.0 ? sum_ : -sum_) >= (value >= 0.0 ? value : -value)) {
            compensation_ += (sum_ - t) + value;
        } else {
            compensation_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

// Dirichlet prior over the data distributions of an integer-valued demand
// process with support {0, 1, ..., M}. Index d of the parameter vector is
// the weight attached to demand value d. Every weight must be strictly
// positive and the support must contain at least two values.
//
// Construction precomputes the concentration alpha = sum alpha_d and the
// first two moments of the prior predictive distribution of a single
// observation:
//   predictive_mean          c1 = (1/alpha) * sum d * alpha_d
//   predictive_second_moment c2 = (1/alpha) * sum d^2 * alpha_d
//   predictive_variance      c2 - c1^2, accumulated as a nonnegative
//                            spread sum so concentrated priors do not
//                            suffer catastrophic cancellation.
class DirichletPrior {
public:
    explicit DirichletPrior(std::vector<double> alphas);

    std::size_t support_size() const noexcept { return alphas_.size(); }
    std::int64_t max_value() const noexcept {
        return static_cast<std::int64_t>(alphas_.size()) - 1;
    }

    const std::vector<double>& alphas() const noexcept { return alphas_; }

    double concentration() const noexcept { return concentration_; }
    double predictive_mean() const noexcept { return predictive_mean_; }
    double predictive_second_moment() const noexcept { return predictive_second_moment_; }
    double predictive_variance() const noexcept { return predictive_variance_; }

    // m_d = alpha_d / alpha
    std::vector<double> mean_weights() const;

private:
    std::vector<double> alphas_;
    double concentration_ = 0.0;
    double predictive_mean_ = 0.0;
    double predictive_second_moment_ = 0.0;
    double predictive_variance_ = 0.0;
};

// Sufficient statistic of a sample: counts[d] is the number of observations
// equal to d. The total sample size n may be zero; the sample mean Z is
// defined only for n >= 1.
class SampleCounts {
public:
    explicit SampleCounts(std::vector<std::int64_t> counts);

    static SampleCounts zeros(std::size_t support_size);

    const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
    std::size_t support_size() const noexcept { return counts_.size(); }

    std::int64_t total() const noexcept { return total_; }

    // Z = (1/n) * sum d * counts[d]; throws when the sample is empty.
    double sample_mean() const;

private:
    std::vector<std::int64_t> counts_;
    std::int64_t total_ = 0;
    std::int64_t weighted_total_ = 0;
};

// A point of the probability simplex over {0, ..., M}: probs[d] is the
// chance of observing demand value d. Entries must be nonnegative and sum
// to one within 1e-12.
class DataDistribution {
public:
    explicit DataDistribution(std::vector<double> probs);

    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t support_size() const noexcept { return probs_.size(); }
    std::int64_t max_value() const noexcept {
        return static_cast<std::int64_t>(probs_.size()) - 1;
    }

    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return variance_; }

private:
    std::vector<double> probs_;
    double mean_ = 0.0;
    double variance_ = 0.0;
};

// Quadratic terminal loss loss(d, a) = scale * (d - a)^2 with scale > 0.
class LossSpec {
public:
    explicit LossSpec(double scale);

    double scale() const noexcept { return scale_; }

private:
    double scale_;
};

}  // namespace voi
