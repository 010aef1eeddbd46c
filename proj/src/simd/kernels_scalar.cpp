#include <cmath>

#include "sptree/simd/kernels.hpp"

namespace sptree::simd::scalar {

double dot(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = dot(a.subspan(i * n, n), x);
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::fmax(m, std::fabs(v));
    return m;
}

}  // namespace sptree::simd::scalar
