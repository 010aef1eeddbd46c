#pragma once

#include <cstdint>
#include <random>

#include "sptree/numeric.hpp"

namespace sptree {

/// Seeded 64-bit Mersenne Twister. Every randomized decision draws whole
/// 64-bit words, so a trace is reproducible from the seed alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_word() {
        ++words_;
        return engine_();
    }

    /// True with probability exactly floor(q * 2^64) / 2^64, one word.
    bool bernoulli(const Rational& q);
    /// Float variant of the same rule.
    bool bernoulli(double q);
    /// Unbiased draw from 0..n-1 by rejection.
    std::uint64_t uniform_below(std::uint64_t n);

    [[nodiscard]] std::uint64_t words_drawn() const { return words_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t words_ = 0;
};

/// Seed for run `index` of an ensemble started from `base` (SplitMix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace sptree
