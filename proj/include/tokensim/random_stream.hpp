#pragma once

#include <cstdint>
#include <random>

namespace tokensim {

// SplitMix64 finaliser. Used only to turn structured seeds (base, index)
// into well-spread engine seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
    return mix_seed(mix_seed(parent) ^ mix_seed(index + 0xD1B54A32D192ED03ULL));
}

// A seeded, replayable source of variates.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Distribution transforms are implemented here rather than taken
// from <random> so the same seed yields the same variates on every
// standard library.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    // Stream for run `run_index` of an ensemble seeded with `base_seed`.
    static RandomStream for_run(std::uint64_t base_seed, std::uint64_t run_index) {
        return RandomStream(derive_seed(base_seed, run_index));
    }

    // Independent child stream; the engine gives step t the child `t`.
    RandomStream substream(std::uint64_t index) const {
        return RandomStream(derive_seed(seed_, index));
    }

    std::uint64_t seed() const noexcept { return seed_; }

    // Raw 64-bit outputs consumed so far.
    std::uint64_t raw_draws() const noexcept { return raw_draws_; }

    std::uint64_t next_u64() {
        ++raw_draws_;
        return engine_();
    }

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (cosine branch); consumes two uniforms.
    double standard_normal();

    // Poisson(mean). Knuth's multiplication method below 30, otherwise a
    // rounded normal approximation clamped at zero.
    std::int64_t poisson(double mean);

    static constexpr double kPoissonNormalThreshold = 30.0;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::uint64_t raw_draws_ = 0;
};

}  // namespace tokensim
