#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace sptree {

using BigInt = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const BigInt& v) { return v.get_str(); }

/// "num/den" in lowest terms; integers still carry "/1".
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Natural log of a positive big integer without overflowing a double.
inline double log_of(const BigInt& v) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

/// Natural log of a positive rational.
inline double log_of(const Rational& q) {
    return log_of(BigInt(q.get_num())) - log_of(BigInt(q.get_den()));
}

inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace sptree
