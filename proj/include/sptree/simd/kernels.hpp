#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense double-precision kernels used by the floating-point Laplacian path.
// Every kernel has a scalar reference; wider variants are chosen once at
// runtime from CPU features and must agree with the reference to rounding.

namespace sptree::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Best ISA supported by this CPU and this build.
Isa detected_isa();
/// ISA currently used by the dispatching entry points. Honors SPTREE_SIMD=scalar.
Isa active_isa();
/// Pin the dispatcher (tests). Throws if the ISA is unavailable.
void force_isa(Isa isa);
bool isa_available(Isa isa);

double dot(std::span<const double> x, std::span<const double> y);
/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
/// out[i] = sum_j a[i*n + j] * x[j] for a row-major n x n block.
void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> out);
/// max_i |x[i]|
double max_abs(std::span<const double> x);

namespace scalar {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> out);
double max_abs(std::span<const double> x);
}  // namespace scalar

#if defined(SPTREE_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> out);
double max_abs(std::span<const double> x);
}  // namespace avx2
#endif

}  // namespace sptree::simd
