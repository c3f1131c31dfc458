#pragma once

#include <array>
#include <cstdint>

namespace voi {

// xoshiro256++ with splitmix64 seeding. Self-contained so that seeded runs
// reproduce bit-identically no matter which standard library the project is
// built against.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed);

    std::uint64_t operator()() noexcept;

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

private:
    std::array<std::uint64_t, 4> state_{};
};

// Counter-based stream split: the (domain, index) pair selects a statistically
// independent generator from the master seed, so parallel replications can be
// assigned streams without any sequential seeding pass.
Rng stream_rng(std::uint64_t master_seed, std::uint64_t domain, std::uint64_t index);

// Uniform on [0, 1) with 53-bit resolution.
double uniform01(Rng& rng) noexcept;

// Uniform on (0, 1); safe to feed into log().
double uniform_open01(Rng& rng) noexcept;

// Standard normal via Box-Muller.
double standard_normal(Rng& rng) noexcept;

// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shapes below one use the
// boost U^(1/shape) trick. shape must be positive and finite.
double gamma_variate(Rng& rng, double shape);

}  // namespace voi
