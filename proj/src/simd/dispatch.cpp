#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "sptree/simd/kernels.hpp"

namespace sptree::simd {

namespace {

bool cpu_has_avx2() {
#if defined(SPTREE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa initial_isa() {
    if (const char* env = std::getenv("SPTREE_SIMD"); env != nullptr && std::string(env) == "scalar") {
        return Isa::scalar;
    }
    return detected_isa();
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

Isa detected_isa() {
    static const bool avx2 = cpu_has_avx2();
    return avx2 ? Isa::avx2 : Isa::scalar;
}

bool isa_available(Isa isa) { return isa == Isa::scalar || detected_isa() == Isa::avx2; }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (!isa_available(isa)) throw std::runtime_error(std::string("SIMD variant unavailable: ") + std::string(isa_name(isa)));
    current().store(isa, std::memory_order_relaxed);
}

double dot(std::span<const double> x, std::span<const double> y) {
#if defined(SPTREE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::dot(x, y);
#endif
    return scalar::dot(x, y);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
#if defined(SPTREE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::axpy(a, x, y);
#endif
    scalar::axpy(a, x, y);
}

void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> out) {
#if defined(SPTREE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::matvec(a, n, x, out);
#endif
    scalar::matvec(a, n, x, out);
}

double max_abs(std::span<const double> x) {
#if defined(SPTREE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::max_abs(x);
#endif
    return scalar::max_abs(x);
}

}  // namespace sptree::simd
