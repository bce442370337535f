#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace bures {

/// SplitMix64 finalizer. Used to expand seeds and to derive per-sample streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed of the independent stream number `index` under a batch seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

/// xoshiro256** seeded through SplitMix64.
///
/// All sampling in the library goes through this generator and the helpers
/// below, which are written out explicitly (no <random> distributions) so a
/// given seed yields bit-identical draws on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto &word : state_) {
            word = splitmix64(x);
            x += 0x9E3779B97F4A7C15ull;
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Unit-rate exponential by inversion.
    double exponential() {
        return -std::log1p(-uniform());
    }

    /// Standard normal by Box-Muller (one of the pair is discarded).
    double normal() {
        double u1 = uniform();
        while (u1 == 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    /// Uniform point in the closed unit ball of R^3.
    std::array<double, 3> in_unit_ball() {
        while (true) {
            std::array<double, 3> v{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
            if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] <= 1.0) {
                return v;
            }
        }
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace bures
