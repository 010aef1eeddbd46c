#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sptree/fixtures.hpp"
#include "sptree/simd/kernels.hpp"
#include "sptree/spectral.hpp"

using namespace sptree;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(gen);
    return v;
}

// Reassociation changes rounding; allow a few ulps of the absolute sum.
double tolerance(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] * y[i]);
    return 8.0 * s * 2.220446049250313e-16 + 1e-300;
}

}  // namespace

TEST_CASE("scalar reference kernels") {
    const std::vector<double> x{1, 2, 3, -4, 5};
    const std::vector<double> y{2, 0, 1, 1, -1};
    CHECK(simd::scalar::dot(x, y) == 2 + 3 - 4 - 5);
    std::vector<double> z = y;
    simd::scalar::axpy(2.0, x, z);
    CHECK(z == std::vector<double>{4, 4, 7, -7, 9});
    CHECK(simd::scalar::max_abs(x) == 5);
    const std::vector<double> a{1, 2, 3, 4};
    std::vector<double> out(2);
    simd::scalar::matvec(a, 2, std::vector<double>{1, -1}, out);
    CHECK(out == std::vector<double>{-1, -1});
}

#if defined(SPTREE_HAVE_AVX2)
TEST_CASE("avx2 matches scalar") {
    if (!simd::isa_available(simd::Isa::avx2)) {
        MESSAGE("cpu lacks avx2; equivalence not exercised");
        return;
    }
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 64u, 255u, 1000u}) {
        const auto x = noise(n, n + 1);
        const auto y = noise(n, n + 99);
        CHECK(std::abs(simd::avx2::dot(x, y) - simd::scalar::dot(x, y)) <= tolerance(x, y));
        CHECK(simd::avx2::max_abs(x) == simd::scalar::max_abs(x));
        auto za = y;
        auto zs = y;
        simd::avx2::axpy(0.37, x, za);
        simd::scalar::axpy(0.37, x, zs);
        for (std::size_t i = 0; i < n; ++i) CHECK(za[i] == doctest::Approx(zs[i]).epsilon(1e-15));
    }
    for (std::size_t n : {1u, 2u, 5u, 8u, 13u, 33u}) {
        const auto a = noise(n * n, 7 * n);
        const auto x = noise(n, 3 * n);
        std::vector<double> oa(n);
        std::vector<double> os(n);
        simd::avx2::matvec(a, n, x, oa);
        simd::scalar::matvec(a, n, x, os);
        for (std::size_t i = 0; i < n; ++i) {
            const std::vector<double> row(a.begin() + static_cast<long>(i * n), a.begin() + static_cast<long>((i + 1) * n));
            CHECK(std::abs(oa[i] - os[i]) <= tolerance(row, x));
        }
    }
}

TEST_CASE("resistances agree across isas") {
    if (!simd::isa_available(simd::Isa::avx2)) return;
    const auto g = make_grid(6, 5);
    std::vector<double> by_scalar;
    std::vector<double> by_avx2;
    simd::force_isa(simd::Isa::scalar);
    for (EdgeId e : g.edge_ids()) by_scalar.push_back(effective_resistance(g, e, ResistanceMethod::laplacian_solve).approx);
    simd::force_isa(simd::Isa::avx2);
    for (EdgeId e : g.edge_ids()) by_avx2.push_back(effective_resistance(g, e, ResistanceMethod::laplacian_solve).approx);
    simd::force_isa(simd::detected_isa());
    for (std::size_t i = 0; i < by_scalar.size(); ++i) CHECK(by_avx2[i] == doctest::Approx(by_scalar[i]).epsilon(1e-12));
}
#endif

TEST_CASE("dispatch") {
    simd::force_isa(simd::Isa::scalar);
    CHECK(simd::active_isa() == simd::Isa::scalar);
    const std::vector<double> x{3, 4};
    CHECK(simd::dot(x, x) == 25);
    simd::force_isa(simd::detected_isa());
    CHECK(simd::dot(x, x) == 25);
    CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
}
