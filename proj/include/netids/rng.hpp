#pragma once

#include <cmath>
#include <cstdint>

namespace netids {

// Deterministic PRNG (xoshiro256++ seeded through splitmix64).
// The standard <random> distributions are implementation-defined, so every
// draw here is hand-rolled; identical seeds give identical streams on any
// platform. Substreams derive from the construction seed, not the current
// state, so their contents do not depend on interleaving or scheduling.
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_key_(seed) {
        uint64_t x = seed;
        for (auto& s : state_) s = splitmix64(x);
    }

    // Independent stream keyed by (construction seed, stream id).
    Rng derive(uint64_t stream) const {
        uint64_t x = seed_key_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
        uint64_t mixed = splitmix64(x);
        return Rng(mixed ^ splitmix64(x));
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0,1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, bound).
    uint64_t next_below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Marsaglia polar method; the spare is cached, so draws come in a fixed
    // deterministic order.
    double normal(double mean, double stddev) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return mean + stddev * u * m;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    uint64_t seed_key() const { return seed_key_; }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t seed_key_;
    uint64_t state_[4]{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Named substream ids, so seed derivation stays in one place.
namespace rng_stream {
constexpr uint64_t kBootstrap = 0x01;
constexpr uint64_t kHoldoutSplit = 0x02;
constexpr uint64_t kSynth = 0x03;
constexpr uint64_t kForestTreeBase = 0x1000;  // + tree index
}  // namespace rng_stream

}  // namespace netids
