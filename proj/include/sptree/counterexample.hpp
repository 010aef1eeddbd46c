#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sptree/numeric.hpp"

namespace sptree {

class CounterexampleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A(0) = 0, A(1) = 1, A(n) = 4 A(n-1) - A(n-2): spanning trees of the
/// 2 x n grid. Memoized per instance.
class GridTreeSequence {
public:
    const BigInt& operator()(std::uint64_t n);

private:
    std::vector<BigInt> cache_{BigInt(0), BigInt(1)};
};

struct Theorem33Result {
    int n = 0;
    BigInt a_n;
    BigInt argument;  // (n - 1) A(n)^2 / 2
    bool argument_integral = true;
    /// Full scores; only filled for small n where A(argument) is computable.
    std::optional<BigInt> score1;
    std::optional<BigInt> score2;
    Rational ratio;  // A(n)^2 / ((n - 1) A(n)^2 + 2)
    Rational ratio_bound;  // 1 / (n - 1)
    bool ratio_ok = false;
    bool uncancelled_matches = true;
    Rational cut_ratio;  // 3 / (2n)
};

/// Score pair of the two 2-partitions of the cycle-based family.
/// n must be even and at least 2.
Theorem33Result theorem33_scores(int n, GridTreeSequence& a, std::uint64_t full_score_cap = 5000);

struct ResistanceChain {
    long n = 0;
    std::vector<double> values;  // r_0, r_1, ...
    std::vector<bool> bound_ok;  // r_i <= 2 / (min(i, floor(sqrt(n)/2)) + 2)
    long exact_steps = 0;        // iterations carried out in exact rationals
    std::optional<Rational> last_exact;
    [[nodiscard]] bool all_ok() const;
};

/// r_i = 1 / (1 + 1 / (r_{i-1} + 2/n)), from r_0 (default 4/5). Exact up to
/// `exact_limit` iterations, then 256-bit floats.
ResistanceChain theorem34_resistances(long n, long i_max, const Rational& r0 = make_rational(4, 5),
                                      long exact_limit = 10000);

/// Fixed point of the recurrence: r* = (-c + sqrt(c^2 + 4c)) / 2, c = 2/n.
double resistance_fixed_point(long n);

long floor_sqrt_half(long n);  // floor(sqrt(n) / 2)
BigInt floor_four_thirds(long n);  // floor(n^(4/3))

/// The two cross-multiplied implications used by the induction.
/// Small case (needs 4 i^2 <= n): i^2 + i <= n and
/// (2n + 2i + 2)(i + 2) <= 2(ni + 3n + 2i + 2).
bool small_step_implication(long n, long i);
/// Large case: (2 + 1/s + 4/n)(s/2 + 2) <= 2(s/2 + 4 + 1/s + 4/n), s = sqrt(n).
bool large_step_implication(long n);

struct Theorem34Bound {
    long n = 0;
    double log2_upper_p1 = 0.0;  // -2n
    double log2_lower_p2 = 0.0;  // log2(1/5) - 18 n^(5/6)
    double log2_ratio_upper = 0.0;  // log2 5 + 18 n^(5/6) - 2n
    long cut1 = 0;  // 2n + 1
    BigInt cut2;    // 2 floor(n^(4/3))
};

Theorem34Bound theorem34_ratio_bound(long n);

/// Smallest n from which the log2 ratio bound is negative.
long theorem34_threshold();

}  // namespace sptree
