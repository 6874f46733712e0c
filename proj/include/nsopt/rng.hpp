#pragma once

#include <cmath>
#include <cstdint>

namespace nsopt {

// Counter-based random stream with O(1) derivation of independent substreams.
//
// Each stream is identified by a 64-bit key obtained by chaining the SplitMix64
// finalizer over (seed, stream, substream); the i-th output of a stream is
// mix(key + (i+1)*GAMMA). This gives reproducible, platform-independent values
// (the Gaussian draw uses a fixed Box-Muller transform rather than the
// implementation-defined std::normal_distribution).
class RandomStream {
  public:
    RandomStream() : RandomStream(0, 0, 0) {}

    RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
        key_ = mix(mix(mix(seed + GAMMA) + stream) + substream);
    }

    // Next raw 64-bit word.
    std::uint64_t next_u64() { return mix(key_ + (++counter_) * GAMMA); }

    // Uniform in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in {0, ..., n-1} via rejection (unbiased).
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = next_u64(); } while (v >= limit);
        return v % n;
    }

    // Standard normal, Box-Muller (one value per call; the pair's second
    // member is cached).
    double gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do { u1 = uniform(); } while (u1 <= 0.0);
        u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    // Uniform sign, +1 or -1.
    double rademacher() { return (next_u64() >> 63) ? 1.0 : -1.0; }

  private:
    static constexpr std::uint64_t GAMMA = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27; z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// Substream ids used by the experiment harness; one replication r of a run
// with master seed s owns streams (s, r, kEnv/kNoise/kPolicy).
enum Substream : std::uint64_t { kEnvSub = 0, kNoiseSub = 1, kPolicySub = 2 };

} // namespace nsopt
