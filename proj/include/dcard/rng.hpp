#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace dcard {

/// Deterministic PRNG used everywhere randomness is needed (weight init,
/// dropout masks, augmentation choice, shuffling, synthetic data).
///
/// Algorithm (frozen): xoshiro256++ by Blackman & Vigna, seeded by running
/// splitmix64 over the 64-bit seed. Floating-point conversions are defined
/// below in terms of the raw 64-bit stream, so the value sequence for a
/// given seed is identical on every platform:
///   uniform():      top 53 bits scaled by 2^-53, in [0, 1)
///   normal():       Box-Muller, consumes exactly two raw draws per call
///   uniform_int(n): 128-bit multiply-shift of one raw draw
struct Rng {
    std::array<uint64_t, 4> s;

    explicit Rng(uint64_t seed = 0) {
        uint64_t x = seed;
        for (auto& si : s) si = splitmix64(x);
    }

    /// Independent stream derived from (seed, tag); used to give each fold /
    /// subsystem its own generator.
    static Rng derive(uint64_t seed, uint64_t tag) {
        uint64_t x = seed;
        uint64_t a = splitmix64(x);
        x ^= tag * 0x9e3779b97f4a7c15ULL;
        uint64_t b = splitmix64(x);
        return Rng(a ^ (b << 1) ^ tag);
    }

    uint64_t next_u64() {
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

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; always consumes two raw draws.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [0, n); n must be > 0.
    uint64_t uniform_int(uint64_t n) {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
    }

    template <typename V>
    void shuffle(std::vector<V>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

}  // namespace dcard
