#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sptree/graph.hpp"
#include "sptree/numeric.hpp"

namespace sptree::linalg {

/// Dense row-major square matrix.
template <typename T>
struct Dense {
    std::size_t n = 0;
    std::vector<T> a;

    Dense() = default;
    explicit Dense(std::size_t size) : n(size), a(size * size, T(0)) {}
    T& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Vertex id <-> dense row index over the present vertices of a graph.
struct VertexIndex {
    std::vector<VertexId> ids;    // row -> vertex
    std::vector<int> row_of;      // vertex -> row, -1 when absent

    explicit VertexIndex(const EmbeddedMultiGraph& g);
    [[nodiscard]] std::size_t size() const { return ids.size(); }
    [[nodiscard]] int row(VertexId v) const { return row_of.at(static_cast<std::size_t>(v)); }
};

/// Graph Laplacian with multi-edges counted by multiplicity and loops ignored.
Dense<std::int64_t> laplacian(const EmbeddedMultiGraph& g, const VertexIndex& index);

/// Drop row/column `skip`.
template <typename T>
Dense<T> without(const Dense<T>& m, std::size_t skip) {
    Dense<T> out(m.n - 1);
    for (std::size_t i = 0, oi = 0; i < m.n; ++i) {
        if (i == skip) continue;
        for (std::size_t j = 0, oj = 0; j < m.n; ++j) {
            if (j == skip) continue;
            out(oi, oj++) = m(i, j);
        }
        ++oi;
    }
    return out;
}

/// Fraction-free (Bareiss) determinant. Runs on checked 64-bit integers and
/// restarts on GMP integers if any intermediate would overflow.
BigInt bareiss_determinant(const Dense<std::int64_t>& m);
BigInt bareiss_determinant_big(const Dense<std::int64_t>& m);

/// Exact solve of a nonsingular system by Gaussian elimination over Q.
std::vector<Rational> solve_exact(Dense<Rational> m, std::vector<Rational> rhs);

/// Dense Cholesky factor of a symmetric positive definite matrix.
class Cholesky {
public:
    explicit Cholesky(const Dense<double>& m);
    [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;
    [[nodiscard]] double log_determinant() const;
    [[nodiscard]] std::size_t size() const { return l_.n; }

private:
    Dense<double> l_;  // lower triangle, row-major
};

struct RefinedSolve {
    std::vector<double> x;
    double residual = 0.0;  // max-norm of m x - rhs
    int refinements = 0;
};

/// Cholesky solve followed by iterative refinement until the max-norm
/// residual is at most `tolerance` or `max_rounds` corrections were applied.
RefinedSolve solve_spd(const Dense<double>& m, std::span<const double> rhs, double tolerance = 1e-12,
                       int max_rounds = 8);

Dense<double> to_double(const Dense<std::int64_t>& m);

}  // namespace sptree::linalg
