#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "critchemo/kernels.hpp"

using namespace critchemo;

namespace {

std::vector<double> random_positive(std::size_t n, std::uint64_t seed, double lo = 1e-8,
                                    double hi = 1e4) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> expo(std::log(lo), std::log(hi));
    std::vector<double> out(n);
    for (double& x : out) x = std::exp(expo(rng));
    return out;
}

}  // namespace

TEST_CASE("dispatch reports a valid isa and can be forced") {
    const auto isa = kernels::active();
    CHECK((isa == kernels::Isa::Scalar || isa == kernels::Isa::Avx2));
    kernels::force(kernels::Isa::Scalar);
    CHECK(kernels::active() == kernels::Isa::Scalar);
    kernels::force(isa);
    CHECK(kernels::active() == isa);
    CHECK(kernels::parse_isa("scalar") == kernels::Isa::Scalar);
    CHECK(kernels::parse_isa("avx2") == kernels::Isa::Avx2);
    CHECK_THROWS(kernels::parse_isa("neon"));
}

TEST_CASE("reference dot products match hand-computed sums") {
    const std::vector<double> a{1.0, 2.0, 3.0}, b{4.0, 5.0, 6.0}, c{1.0, 0.5, 2.0};
    CHECK(kernels::ref::dot(a.data(), b.data(), 3) == doctest::Approx(32.0));
    CHECK(kernels::ref::dot3(a.data(), b.data(), c.data(), 3) == doctest::Approx(45.0));
}

TEST_CASE("pow_array conventions: 0^p = 0 for p > 0, exact integer powers") {
    const std::vector<double> x{0.0, 1.0, 2.0, 9.0};
    std::vector<double> out(4);
    kernels::ref::pow_array(x.data(), 2.0, out.data(), 4);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == doctest::Approx(1.0));
    CHECK(out[2] == doctest::Approx(4.0));
    CHECK(out[3] == doctest::Approx(81.0));
    kernels::ref::pow_array(x.data(), 0.5, out.data(), 4);
    CHECK(out[0] == 0.0);
    CHECK(out[3] == doctest::Approx(3.0));
}

#if defined(__x86_64__)

TEST_CASE("avx2 reductions agree with scalar reference") {
    if (kernels::active() != kernels::Isa::Avx2) return;  // no AVX2 on this CPU
    for (const std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
        const auto a = random_positive(n, 11 + n);
        const auto b = random_positive(n, 23 + n);
        const auto c = random_positive(n, 37 + n);
        const double d_ref = kernels::ref::dot(a.data(), b.data(), n);
        const double d_vec = kernels::avx2::dot(a.data(), b.data(), n);
        CHECK(d_vec == doctest::Approx(d_ref).epsilon(1e-13));
        const double t_ref = kernels::ref::dot3(a.data(), b.data(), c.data(), n);
        const double t_vec = kernels::avx2::dot3(a.data(), b.data(), c.data(), n);
        CHECK(t_vec == doctest::Approx(t_ref).epsilon(1e-13));
    }
}

TEST_CASE("avx2 pow agrees with std::pow over wide magnitude range") {
    if (kernels::active() != kernels::Isa::Avx2) return;
    const std::size_t n = 4096;
    const auto x = random_positive(n, 99, 1e-30, 1e30);
    std::vector<double> out(n);
    for (const double p : {0.2, 1.2, 1.25, -0.5, 2.0, 0.16666666666666666}) {
        kernels::avx2::pow_array(x.data(), p, out.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            const double want = std::pow(x[i], p);
            CHECK(out[i] == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("avx2 pow handles extreme magnitudes via scalar fallback lanes") {
    if (kernels::active() != kernels::Isa::Avx2) return;
    const std::vector<double> x{0.0, 1e-300, 1e250, 1.0, 5e-290, 7e215, 2.0, 3.0};
    std::vector<double> out(x.size());
    kernels::avx2::pow_array(x.data(), 1.2, out.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double want = x[i] == 0.0 ? 0.0 : std::pow(x[i], 1.2);
        if (want == 0.0)
            CHECK(out[i] == 0.0);
        else
            CHECK(out[i] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("avx2 sum_pow agrees with reference") {
    if (kernels::active() != kernels::Isa::Avx2) return;
    for (const std::size_t n : {5u, 512u, 777u}) {
        const auto x = random_positive(n, 7 + n, 1e-6, 1e6);
        const auto w = random_positive(n, 13 + n, 1e-3, 1e3);
        const double s_ref = kernels::ref::sum_pow(x.data(), 1.2, w.data(), n);
        const double s_vec = kernels::avx2::sum_pow(x.data(), 1.2, w.data(), n);
        CHECK(s_vec == doctest::Approx(s_ref).epsilon(1e-12));
    }
}

TEST_CASE("avx2 riesz rows agree with reference") {
    if (kernels::active() != kernels::Isa::Avx2) return;
    const std::size_t n = 333, ngl = 16;
    const auto s = random_positive(n, 3, 0.01, 50.0);
    const auto fw = random_positive(n, 5, 1e-4, 10.0);
    // crude Chebyshev-like nodes; equivalence only needs matched inputs
    std::vector<double> glt(ngl), glw(ngl, 1.0 / (2.0 * ngl));
    for (std::size_t k = 0; k < ngl; ++k)
        glt[k] = std::cos(M_PI * (k + 0.5) / ngl);
    for (const double r : {0.0, 0.5, 10.0}) {
        const double a = kernels::ref::riesz_row(r, s.data(), fw.data(), n, glt.data(),
                                                 glw.data(), ngl, 1e-4, 0.5);
        const double b = kernels::avx2::riesz_row(r, s.data(), fw.data(), n, glt.data(),
                                                  glw.data(), ngl, 1e-4, 0.5);
        CHECK(b == doctest::Approx(a).epsilon(1e-12));
    }
}

#endif  // __x86_64__

TEST_CASE("dispatched kernels match whichever isa is active") {
    const std::size_t n = 257;
    const auto x = random_positive(n, 42, 1e-3, 1e3);
    const auto w = random_positive(n, 43, 1e-3, 1e3);
    const double via_dispatch = kernels::sum_pow(x.data(), 1.2, w.data(), n);
    const double via_ref = kernels::ref::sum_pow(x.data(), 1.2, w.data(), n);
    CHECK(via_dispatch == doctest::Approx(via_ref).epsilon(1e-12));
}
