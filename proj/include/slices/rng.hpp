#pragma once

// Deterministic cross-platform random source: xoshiro256** state seeded
// through splitmix64.  Every sampler takes an explicit Rng; there is no
// global generator.  Parallel work derives one independent stream per
// worker from (seed, worker index) via derive_worker_rng, so merged
// results do not depend on scheduling.

#include <cstdint>

namespace slices {

class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    // Uniform on {0, ..., bound-1}, unbiased via rejection. bound >= 1.
    std::uint64_t below(std::uint64_t bound);

    // Uniform double in [0, 1) with 53 random bits.
    double unit();

private:
    std::uint64_t s_[4];
};

// Stream for worker w of a run seeded with `seed`: the xoshiro state is
// drawn from a splitmix64 sequence started at seed + (w+1) * 0x9E3779B97F4A7C15.
Rng derive_worker_rng(std::uint64_t seed, std::uint64_t worker);

} // namespace slices
