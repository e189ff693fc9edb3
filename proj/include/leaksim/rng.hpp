#pragma once

#include <cstdint>

namespace leaksim {

// Counter-based per-shot random stream. Each shot owns the stream
// (master_seed, stream_id); streams are mutually independent and a given
// stream replays identically, so results do not depend on which worker
// runs which shot.
//
// Core generator is xoshiro256**, seeded through splitmix64.
class RngStream {
   public:
    RngStream(uint64_t master_seed, uint64_t stream_id) {
        uint64_t seed = splitmix64_step(master_seed ^ 0x9e3779b97f4a7c15ULL);
        seed = splitmix64_step(seed ^ stream_id);
        uint64_t sm = seed;
        for (auto &word : state_) {
            sm += 0x9e3779b97f4a7c15ULL;
            word = splitmix64_step(sm);
        }
    }

    uint64_t next_u64() {
        uint64_t result = rotl(state_[1] * 5, 7) * 9;
        uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., n-1}; n is tiny here so modulo bias is negligible
    // relative to the 3-sigma statistical tests (bias < 2^-60).
    uint32_t uniform_index(uint32_t n) { return static_cast<uint32_t>(next_u64() % n); }

    bool bernoulli(double p) { return uniform() < p; }

   private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    static uint64_t splitmix64_step(uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    uint64_t state_[4];
};

}  // namespace leaksim
