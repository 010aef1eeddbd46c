#include "sptree/rng.hpp"

#include <cmath>

namespace sptree {

bool Rng::bernoulli(const Rational& q) {
    const std::uint64_t word = next_word();
    if (q <= 0) return false;
    if (q >= 1) return true;
    BigInt threshold = q.get_num();
    threshold <<= 64;
    threshold /= q.get_den();  // floor(q * 2^64) < 2^64
    BigInt w;
    mpz_import(w.get_mpz_t(), 1, 1, sizeof word, 0, 0, &word);
    return w < threshold;
}

bool Rng::bernoulli(double q) {
    const std::uint64_t word = next_word();
    if (!(q > 0.0)) return false;
    if (q >= 1.0) return true;
    const auto threshold = static_cast<std::uint64_t>(std::floor(std::ldexp(q, 64)));
    return word < threshold;
}

std::uint64_t Rng::uniform_below(std::uint64_t n) {
    const std::uint64_t reject_below = (0 - n) % n;
    for (;;) {
        const std::uint64_t word = next_word();
        if (word >= reject_below) return word % n;
    }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace sptree
