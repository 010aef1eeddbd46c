#include "sptree/counterexample.hpp"

#include <algorithm>
#include <cmath>

namespace sptree {

const BigInt& GridTreeSequence::operator()(std::uint64_t n) {
    while (cache_.size() <= n) {
        const std::size_t k = cache_.size();
        cache_.push_back(4 * cache_[k - 1] - cache_[k - 2]);
    }
    return cache_[n];
}

Theorem33Result theorem33_scores(int n, GridTreeSequence& a, std::uint64_t full_score_cap) {
    if (n < 2 || n % 2 != 0) {
        throw CounterexampleError("the family is defined for even n >= 2, got n = " + std::to_string(n));
    }
    Theorem33Result out;
    out.n = n;
    out.a_n = a(static_cast<std::uint64_t>(n));
    const BigInt sq = out.a_n * out.a_n;
    const BigInt twice = (n - 1) * sq;
    out.argument_integral = mpz_divisible_ui_p(twice.get_mpz_t(), 2) != 0;
    if (!out.argument_integral) {
        throw CounterexampleError("(n - 1) A(n)^2 / 2 is not an integer for n = " + std::to_string(n));
    }
    out.argument = twice / 2;
    out.ratio = Rational(sq, twice + 2);
    out.ratio.canonicalize();
    out.ratio_bound = make_rational(1, n - 1);
    out.ratio_ok = out.ratio <= out.ratio_bound;
    out.cut_ratio = make_rational(3, 2L * n);
    if (out.argument <= full_score_cap) {
        const BigInt& common = a(out.argument.get_ui());
        out.score1 = sq * common;
        out.score2 = (twice + 2) * common;
        Rational full(*out.score1, *out.score2);
        full.canonicalize();
        out.uncancelled_matches = full == out.ratio;
    }
    return out;
}

bool ResistanceChain::all_ok() const { return std::all_of(bound_ok.begin(), bound_ok.end(), [](bool b) { return b; }); }

long floor_sqrt_half(long n) {
    // floor(sqrt(n)/2) = largest k with 4k^2 <= n
    long k = static_cast<long>(std::sqrt(static_cast<double>(n)) / 2.0);
    while (k > 0 && 4 * k * k > n) --k;
    while (4 * (k + 1) * (k + 1) <= n) ++k;
    return k;
}

BigInt floor_four_thirds(long n) {
    BigInt fourth = BigInt(n) * n * n * n;
    BigInt root;
    mpz_root(root.get_mpz_t(), fourth.get_mpz_t(), 3);
    return root;
}

ResistanceChain theorem34_resistances(long n, long i_max, const Rational& r0, long exact_limit) {
    if (n < 1) throw CounterexampleError("n must be positive");
    if (i_max < 0) throw CounterexampleError("i_max must be non-negative");
    if (r0 <= 0 || r0 > make_rational(4, 5)) throw CounterexampleError("r_0 must lie in (0, 4/5]");
    ResistanceChain chain;
    chain.n = n;
    const long cap = floor_sqrt_half(n);
    auto bound_index = [cap](long i) { return std::min(i, cap); };

    // r = p / q kept unreduced: r' = (n p + 2 q) / (n p + (n + 2) q)
    BigInt p = r0.get_num();
    BigInt q = r0.get_den();
    chain.values.push_back(r0.get_d());
    chain.bound_ok.push_back(p * (bound_index(0) + 2) <= 2 * q);
    long i = 1;
    for (; i <= i_max && i <= exact_limit; ++i) {
        BigInt np = n * p;
        BigInt next_p = np + 2 * q;
        BigInt next_q = np + (n + 2) * q;
        p = std::move(next_p);
        q = std::move(next_q);
        chain.values.push_back(mpf_class(mpf_class(p, 256) / mpf_class(q, 256)).get_d());
        chain.bound_ok.push_back(p * (bound_index(i) + 2) <= 2 * q);
    }
    chain.exact_steps = i - 1;
    chain.last_exact = Rational(p, q);
    chain.last_exact->canonicalize();
    if (i > i_max) {
        chain.values.back() = chain.last_exact->get_d();
        return chain;
    }
    mpf_class r(0, 256);
    r = mpf_class(p, 256) / mpf_class(q, 256);
    const mpf_class c(mpf_class(2, 256) / n, 256);
    for (; i <= i_max; ++i) {
        r = (r + c) / (1 + r + c);
        chain.values.push_back(r.get_d());
        chain.bound_ok.push_back(r * (bound_index(i) + 2) <= 2);
    }
    return chain;
}

double resistance_fixed_point(long n) {
    const double c = 2.0 / static_cast<double>(n);
    return (-c + std::sqrt(c * c + 4.0 * c)) / 2.0;
}

bool small_step_implication(long n, long i) {
    if (i < 1 || 4 * i * i > n) throw CounterexampleError("small case needs 1 <= i <= sqrt(n)/2");
    const BigInt nn(n);
    const BigInt ii(i);
    const bool first = ii * ii + ii <= nn;
    const bool last = (2 * nn + 2 * ii + 2) * (ii + 2) <= 2 * (nn * ii + 3 * nn + 2 * ii + 2);
    return first && last;
}

bool large_step_implication(long n) {
    if (n < 1) throw CounterexampleError("n must be positive");
    const mpf_class nn(n, 256);
    const mpf_class s = sqrt(nn);
    const mpf_class lhs = (2 + 1 / s + 4 / nn) * (s / 2 + 2);
    const mpf_class rhs = 2 * (s / 2 + 4 + 1 / s + 4 / nn);
    return lhs <= rhs;
}

Theorem34Bound theorem34_ratio_bound(long n) {
    if (n < 1) throw CounterexampleError("n must be positive");
    Theorem34Bound b;
    b.n = n;
    const double nd = static_cast<double>(n);
    const double growth = 18.0 * std::pow(nd, 5.0 / 6.0);
    b.log2_upper_p1 = -2.0 * nd;
    b.log2_lower_p2 = -std::log2(5.0) - growth;
    b.log2_ratio_upper = std::log2(5.0) + growth - 2.0 * nd;
    b.cut1 = 2 * n + 1;
    b.cut2 = 2 * floor_four_thirds(n);
    return b;
}

long theorem34_threshold() {
    // The bound is positive at n = 1 and eventually decreasing; a galloping
    // search finds the sign change, then bisection pins it down.
    long lo = 1;
    long hi = 2;
    while (theorem34_ratio_bound(hi).log2_ratio_upper >= 0.0) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (theorem34_ratio_bound(mid).log2_ratio_upper >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace sptree
