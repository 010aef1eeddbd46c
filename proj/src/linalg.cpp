#include "sptree/linalg.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "sptree/simd/kernels.hpp"

namespace sptree::linalg {

VertexIndex::VertexIndex(const EmbeddedMultiGraph& g)
    : ids(g.vertices()), row_of(static_cast<std::size_t>(g.vertex_capacity()), -1) {
    for (std::size_t r = 0; r < ids.size(); ++r) row_of[static_cast<std::size_t>(ids[r])] = static_cast<int>(r);
}

Dense<std::int64_t> laplacian(const EmbeddedMultiGraph& g, const VertexIndex& index) {
    Dense<std::int64_t> lap(index.size());
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) continue;
        const auto i = static_cast<std::size_t>(index.row(e.u));
        const auto j = static_cast<std::size_t>(index.row(e.v));
        lap(i, i) += 1;
        lap(j, j) += 1;
        lap(i, j) -= 1;
        lap(j, i) -= 1;
    }
    return lap;
}

namespace {

std::optional<BigInt> bareiss_checked(Dense<std::int64_t> m) {
    constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
    const std::size_t n = m.n;
    if (n == 0) return BigInt(1);
    int sign = 1;
    std::int64_t prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return BigInt(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
            sign = -sign;
        }
        const std::int64_t pivot = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const std::int64_t lead = m(i, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                const __int128 num = static_cast<__int128>(m(i, j)) * pivot - static_cast<__int128>(lead) * m(k, j);
                const __int128 q = num / prev;
                if (q < lo || q > hi) return std::nullopt;
                m(i, j) = static_cast<std::int64_t>(q);
            }
            m(i, k) = 0;
        }
        prev = pivot;
    }
    BigInt det;
    const std::int64_t last = m(n - 1, n - 1);
    det = static_cast<long>(last);
    if (sign < 0) det = -det;
    return det;
}

}  // namespace

BigInt bareiss_determinant_big(const Dense<std::int64_t>& src) {
    const std::size_t n = src.n;
    if (n == 0) return BigInt(1);
    Dense<BigInt> m(n);
    for (std::size_t i = 0; i < n * n; ++i) m.a[i] = static_cast<long>(src.a[i]);
    int sign = 1;
    BigInt prev = 1;
    BigInt num;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return BigInt(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    BigInt det = m(n - 1, n - 1);
    if (sign < 0) det = -det;
    return det;
}

BigInt bareiss_determinant(const Dense<std::int64_t>& m) {
    if (auto fast = bareiss_checked(m)) return *fast;
    return bareiss_determinant_big(m);
}

std::vector<Rational> solve_exact(Dense<Rational> m, std::vector<Rational> rhs) {
    const std::size_t n = m.n;
    if (rhs.size() != n) throw std::invalid_argument("solve_exact: dimension mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k) == 0) ++piv;
        if (piv == n) throw std::domain_error("solve_exact: singular system");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            std::swap(rhs[k], rhs[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            const Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rational s = rhs[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= m(ii, j) * x[j];
        x[ii] = s / m(ii, ii);
    }
    return x;
}

Cholesky::Cholesky(const Dense<double>& m) : l_(m.n) {
    const std::size_t n = m.n;
    for (std::size_t i = 0; i < n; ++i) {
        const std::span<const double> row_i(&l_.a[i * n], i);
        for (std::size_t j = 0; j < i; ++j) {
            const std::span<const double> row_j(&l_.a[j * n], j);
            l_(i, j) = (m(i, j) - simd::dot(row_i.first(j), row_j)) / l_(j, j);
        }
        const double d = m(i, i) - simd::dot(row_i, row_i);
        if (!(d > 0.0)) throw std::domain_error("Cholesky: matrix is not positive definite");
        l_(i, i) = std::sqrt(d);
    }
}

std::vector<double> Cholesky::solve(std::span<const double> rhs) const {
    const std::size_t n = l_.n;
    std::vector<double> y(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = (y[i] - simd::dot(std::span<const double>(&l_.a[i * n], i), std::span<const double>(y.data(), i))) / l_(i, i);
    }
    // L^T x = y, column-oriented so the inner loop runs along rows of L.
    std::vector<double> x = std::move(y);
    for (std::size_t i = n; i-- > 0;) {
        x[i] /= l_(i, i);
        simd::axpy(-x[i], std::span<const double>(&l_.a[i * n], i), std::span<double>(x.data(), i));
    }
    return x;
}

double Cholesky::log_determinant() const {
    double s = 0.0;
    for (std::size_t i = 0; i < l_.n; ++i) s += std::log(l_(i, i));
    return 2.0 * s;
}

RefinedSolve solve_spd(const Dense<double>& m, std::span<const double> rhs, double tolerance, int max_rounds) {
    const Cholesky chol(m);
    RefinedSolve out;
    out.x = chol.solve(rhs);
    std::vector<double> ax(m.n);
    std::vector<double> r(m.n);
    for (;;) {
        simd::matvec(m.a, m.n, out.x, ax);
        for (std::size_t i = 0; i < m.n; ++i) r[i] = rhs[i] - ax[i];
        out.residual = simd::max_abs(r);
        if (out.residual <= tolerance || out.refinements >= max_rounds) break;
        const auto dx = chol.solve(r);
        simd::axpy(1.0, dx, out.x);
        ++out.refinements;
    }
    return out;
}

Dense<double> to_double(const Dense<std::int64_t>& m) {
    Dense<double> out(m.n);
    for (std::size_t i = 0; i < m.a.size(); ++i) out.a[i] = static_cast<double>(m.a[i]);
    return out;
}

}  // namespace sptree::linalg
