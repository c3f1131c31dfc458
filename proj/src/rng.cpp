#include "voi/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace voi {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kInv53 = 0x1.0p-53;

std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
        s += kGolden;
        word = mix64(s);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
        state_[0] = kGolden;
    }
}

std::uint64_t Rng::operator()() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

Rng stream_rng(std::uint64_t master_seed, std::uint64_t domain, std::uint64_t index) {
    const std::uint64_t domain_key = mix64(master_seed + kGolden * (domain + 1));
    return Rng(mix64(domain_key + kGolden * (index + 1)));
}

double uniform01(Rng& rng) noexcept {
    return static_cast<double>(rng() >> 11) * kInv53;
}

double uniform_open01(Rng& rng) noexcept {
    return (static_cast<double>(rng() >> 11) + 0.5) * kInv53;
}

double standard_normal(Rng& rng) noexcept {
    const double radius = std::sqrt(-2.0 * std::log(uniform_open01(rng)));
    const double angle = 2.0 * std::numbers::pi * uniform01(rng);
    return radius * std::cos(angle);
}

double gamma_variate(Rng& rng, double shape) {
    if (!std::isfinite(shape) || !(shape > 0.0)) {
        throw std::invalid_argument("gamma_variate: shape must be positive");
    }
    if (shape < 1.0) {
        const double boost = std::pow(uniform_open01(rng), 1.0 / shape);
        return gamma_variate(rng, shape + 1.0) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open01(rng);
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

}  // namespace voi
