#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace covertsim {

/// Deterministic seeded random stream (xoshiro256++ state, splitmix64 seeding).
///
/// Every random draw in a simulation run comes from a stream derived from the
/// scenario's master seed, so runs replay bit-for-bit. Distribution code is
/// self-contained on purpose: the standard <random> distributions are
/// implementation-defined and would break replay across library versions.
class Rng {
public:
    Rng() : Rng(0) {}

    explicit Rng(uint64_t seed) : seed_(seed) {
        uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    /// Independent substream addressed by tag. Derivation uses the original
    /// seed, not the evolving state, so the substream tree is stable no matter
    /// how many draws the parent has made.
    Rng derive(uint64_t tag) const {
        uint64_t x = seed_ ^ (0x6a09e667f3bcc909ULL + tag);
        uint64_t a = splitmix64(x);
        uint64_t b = splitmix64(x);
        return Rng(a ^ (b << 1) ^ tag);
    }

    Rng derive(std::string_view name) const { return derive(fnv1a(name)); }

    uint64_t next_u64() {
        uint64_t* s = state_;
        uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound). bound = 0 yields 0.
    uint64_t uniform(uint64_t bound) {
        if (bound < 2) return 0;
        // rejection sampling keeps the draw exactly uniform
        uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % bound;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform integer in [lo, hi] inclusive.
    uint64_t uniform_in(uint64_t lo, uint64_t hi) { return lo + uniform(hi - lo + 1); }

    uint16_t next_u16() { return static_cast<uint16_t>(next_u64() >> 48); }

    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform01() < p;
    }

    /// Gaussian via Box-Muller; the spare value is cached in the stream state.
    double normal(double mean, double sigma) {
        if (sigma <= 0.0) return mean;
        if (have_spare_) {
            have_spare_ = false;
            return mean + sigma * spare_;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mean + sigma * r * std::cos(theta);
    }

    uint64_t seed() const { return seed_; }

    static uint64_t splitmix64(uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static constexpr uint64_t fnv1a(std::string_view s) {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return h;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t state_[4];
    uint64_t seed_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace covertsim
