#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fedls {

// splitmix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic seed for a sub-stream identified by (tag, index) under a
// master seed. Every consumer of randomness owns one such stream, so
// per-client work can be reordered or parallelized without changing draws.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t index = 0) {
    return mix64(mix64(master ^ mix64(tag)) ^ mix64(index ^ 0x517cc1b727220a95ull));
}

// Random stream with hand-rolled draws on top of mt19937_64. Distributions
// are implemented here rather than via <random> adaptors so that sequences
// do not depend on the standard library's internals.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Exponential with mean 1.
    double exponential() { return -std::log1p(-uniform()); }

    // Standard normal (Box-Muller, cosine branch).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Poisson draw by Knuth's product method; rates above 500 are split into
    // chunks so exp(-rate) stays representable.
    long poisson(double rate) {
        if (rate < 0.0 || !std::isfinite(rate)) {
            throw std::domain_error("poisson: rate must be finite and >= 0");
        }
        long total = 0;
        while (rate > 500.0) {
            total += poisson_knuth(500.0);
            rate -= 500.0;
        }
        return total + poisson_knuth(rate);
    }

    std::uint64_t raw() { return engine_(); }

private:
    long poisson_knuth(double rate) {
        const double limit = std::exp(-rate);
        long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    std::mt19937_64 engine_;
};

}  // namespace fedls
