#include "slices/rng.hpp"

namespace slices {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int s) { return (x << s) | (x >> (64 - s)); }

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Rng::next() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    std::uint64_t reject_under = (0 - bound) % bound;
    std::uint64_t r = next();
    while (r < reject_under) r = next();
    return r % bound;
}

double Rng::unit() { return (next() >> 11) * 0x1.0p-53; }

Rng derive_worker_rng(std::uint64_t seed, std::uint64_t worker) {
    return Rng(seed + (worker + 1) * 0x9E3779B97F4A7C15ULL);
}

} // namespace slices
