// AVX2 variants of the inner-loop kernels. Compiled with -mavx2 in its own
// TU; only reached when dispatch selects Isa::Avx2.
#include "critchemo/kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace critchemo::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// log(x) for strictly positive normal x, ~1 ulp of the mantissa polynomial.
inline __m256d vlog(__m256d x) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256i expo_mask = _mm256_set1_epi64x(0x7FF0000000000000LL);
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i bias_1 = _mm256_set1_epi64x(0x3FF0000000000000LL);

    __m256i bits = _mm256_castpd_si256(x);
    __m256i expo = _mm256_srli_epi64(_mm256_and_si256(bits, expo_mask), 52);
    // m in [1,2)
    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(bits, mant_mask), bias_1));
    // fold m > sqrt(2) down to [sqrt(2)/2, sqrt(2)]
    __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    __m256d k = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(expo, _mm256_castpd_si256(_mm256_set1_pd(4503599627370496.0)))),
                      _mm256_set1_pd(4503599627370496.0)),
        _mm256_set1_pd(1023.0));
    k = _mm256_blendv_pd(k, _mm256_add_pd(k, one), big);

    // log(m) = 2*atanh(t), t = (m-1)/(m+1), |t| <= 0.1716
    __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    __m256d t2 = _mm256_mul_pd(t, t);
    __m256d p = _mm256_set1_pd(2.0 / 15.0);
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(2.0 / 13.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(2.0 / 11.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(2.0 / 9.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(2.0 / 7.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(2.0 / 5.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(2.0 / 3.0));
    p = _mm256_mul_pd(_mm256_mul_pd(p, t2), t);

    const __m256d ln2_hi = _mm256_set1_pd(0x1.62e42fefa38p-1);
    const __m256d ln2_lo = _mm256_set1_pd(0x1.ef35793c7673p-45);
    // k*ln2 + 2t + poly, with the ln2 split keeping the large term accurate
    __m256d r = _mm256_fmadd_pd(k, ln2_hi, _mm256_add_pd(t, t));
    r = _mm256_add_pd(r, _mm256_fmadd_pd(k, ln2_lo, p));
    return r;
}

// exp(y) for y in [-700, 700]; flushes to the scaled-bits path only.
inline __m256d vexp(__m256d y) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
    const __m256d ln2_hi = _mm256_set1_pd(0x1.62e42fefa38p-1);
    const __m256d ln2_lo = _mm256_set1_pd(0x1.ef35793c7673p-45);
    __m256d n = _mm256_round_pd(_mm256_mul_pd(y, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d f = _mm256_fnmadd_pd(n, ln2_hi, y);
    f = _mm256_fnmadd_pd(n, ln2_lo, f);

    // e^f on |f| <= ln(2)/2, Taylor to degree 13
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(1.0));

    // scale by 2^n via exponent bits (|n| <= 1011 here)
    __m256d shifted = _mm256_add_pd(n, _mm256_set1_pd(6755399441055744.0));  // 2^52+2^51
    __m256i n64 = _mm256_sub_epi64(_mm256_castpd_si256(shifted),
                                   _mm256_castpd_si256(_mm256_set1_pd(6755399441055744.0)));
    __m256i pow2 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(pow2));
}

// x^p with masked scalar fallback for lanes outside the fast domain.
inline __m256d vpow(__m256d x, double p) {
    const __m256d lo = _mm256_set1_pd(1e-280);
    const __m256d hi = _mm256_set1_pd(1e280);
    __m256d ok = _mm256_and_pd(_mm256_cmp_pd(x, lo, _CMP_GE_OQ),
                               _mm256_cmp_pd(x, hi, _CMP_LE_OQ));
    __m256d y = _mm256_mul_pd(_mm256_set1_pd(p),
                              vlog(_mm256_max_pd(x, lo)));
    __m256d inrange = _mm256_and_pd(_mm256_cmp_pd(y, _mm256_set1_pd(-700.0), _CMP_GE_OQ),
                                    _mm256_cmp_pd(y, _mm256_set1_pd(700.0), _CMP_LE_OQ));
    ok = _mm256_and_pd(ok, inrange);
    if (_mm256_movemask_pd(ok) == 0xF) return vexp(y);
    alignas(32) double xs[4], rs[4];
    _mm256_store_pd(xs, x);
    __m256d fast = vexp(y);
    _mm256_store_pd(rs, fast);
    int mask = _mm256_movemask_pd(ok);
    for (int i = 0; i < 4; ++i)
        if (!(mask & (1 << i)))
            rs[i] = (xs[i] == 0.0 && p > 0.0) ? 0.0 : std::pow(xs[i], p);
    return _mm256_load_pd(rs);
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

void pow_array(const double* x, double p, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, vpow(_mm256_loadu_pd(x + i), p));
    for (; i < n; ++i)
        out[i] = (x[i] == 0.0 && p > 0.0) ? 0.0 : std::pow(x[i], p);
}

double sum_pow(const double* x, double p, const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        __m256d nz = _mm256_cmp_pd(xv, zero, _CMP_NEQ_OQ);
        __m256d pv = _mm256_and_pd(vpow(xv, p), nz);
        acc = _mm256_fmadd_pd(pv, _mm256_loadu_pd(w + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i)
        if (x[i] != 0.0) s += w[i] * std::pow(x[i], p);
    return s;
}

double riesz_row(double r, const double* s, const double* fw, std::size_t n,
                 const double* glt, const double* glw, std::size_t ngl,
                 double eps2, double exponent) {
    double acc = 0.0;
    const double mexp = -exponent;
    for (std::size_t j = 0; j < n; ++j) {
        if (fw[j] == 0.0) continue;
        const double a = r * r + s[j] * s[j] + eps2;
        const double b = 2.0 * r * s[j];
        __m256d av = _mm256_set1_pd(a);
        __m256d bv = _mm256_set1_pd(b);
        __m256d m = _mm256_setzero_pd();
        std::size_t k = 0;
        for (; k + 4 <= ngl; k += 4) {
            __m256d q = _mm256_fnmadd_pd(bv, _mm256_loadu_pd(glt + k), av);
            m = _mm256_fmadd_pd(vpow(q, mexp), _mm256_loadu_pd(glw + k), m);
        }
        double mean = hsum(m);
        for (; k < ngl; ++k)
            mean += glw[k] * std::pow(a - b * glt[k], mexp);
        acc += fw[j] * mean;
    }
    return acc;
}

}  // namespace critchemo::kernels::avx2

#endif  // __x86_64__
