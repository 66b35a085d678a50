#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace cogspike {

// Counter-based generator. Every draw is a pure function of (key, counter),
// so streams can be split without any shared state and the same seed yields
// the same sequence on every platform. Distributions are implemented here
// instead of <random> because libstdc++/libc++ disagree on draw order.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : key_(mix(mix(seed) ^ mix(stream + 0x9E3779B97F4A7C15ull))) {}

    std::uint64_t next_u64() {
        return mix(key_ + 0x9E3779B97F4A7C15ull * ++counter_);
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // uniform integer in [0, n)
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
        // rejection keeps the result exactly uniform
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t v = next_u64();
        while (v > limit) v = next_u64();
        return v % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // standard normal, Box-Muller; burns two uniforms per call, no cache
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    double exponential(double rate) {
        if (rate <= 0.0) throw std::invalid_argument("exponential: rate must be positive");
        return -std::log(1.0 - uniform()) / rate;
    }

    // Independent child stream. Derivation only touches the key, so parent
    // and child sequences never overlap regardless of how many draws either
    // makes.
    Rng substream(std::uint64_t label) const {
        Rng r;
        r.key_ = mix(key_ ^ mix(label ^ 0xA3EC647659359ACDull));
        return r;
    }

    Rng substream(std::string_view label) const { return substream(fnv1a(label)); }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xCBF29CE484222325ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001B3ull;
        }
        return h;
    }

    // murmur3 64-bit finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 33;
        z *= 0xFF51AFD7ED558CCDull;
        z ^= z >> 33;
        z *= 0xC4CEB9FE1A85EC53ull;
        z ^= z >> 33;
        return z;
    }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace cogspike
