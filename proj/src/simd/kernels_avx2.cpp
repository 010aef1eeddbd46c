// Compiled with -mavx2 -mfma; only reached when the CPU reports both.
#include <immintrin.h>

#include <cmath>

#include "sptree/simd/kernels.hpp"

namespace sptree::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double* px = x.data();
    const double* py = y.data();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i + 4), _mm256_loadu_pd(py + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), acc0);
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += px[i] * py[i];
    return sum;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    const double* px = x.data();
    double* py = y.data();
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(py + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i)));
    }
    for (; i < n; ++i) py[i] += a * px[i];
}

void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = dot(a.subspan(i * n, n), x);
}

double max_abs(std::span<const double> x) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= x.size(); i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x.data() + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double r = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
    for (; i < x.size(); ++i) r = std::fmax(r, std::fabs(x[i]));
    return r;
}

}  // namespace sptree::simd::avx2
