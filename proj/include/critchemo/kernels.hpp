// kernels.hpp -- data-parallel inner loops with scalar reference and AVX2
// variants, selected at runtime.
#ifndef CRITCHEMO_KERNELS_HPP
#define CRITCHEMO_KERNELS_HPP

#include <cstddef>
#include <string>

namespace critchemo::kernels {

enum class Isa { Scalar, Avx2 };

// ISA selected at startup (AVX2 when the CPU supports it).
Isa active();

// Override the dispatch, e.g. from config `simd = scalar`. Requesting Avx2 on
// a CPU without it falls back to Scalar.
void force(Isa isa);
Isa parse_isa(const std::string& name);
const char* isa_name(Isa isa);

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i a[i]*b[i]*c[i]
double dot3(const double* a, const double* b, const double* c, std::size_t n);

// out[i] = x[i]^p for x[i] >= 0; 0^p = 0 by convention (p may be negative,
// in which case x must be strictly positive).
void pow_array(const double* x, double p, double* out, std::size_t n);

// sum_i w[i]*x[i]^p, same conventions as pow_array.
double sum_pow(const double* x, double p, const double* w, std::size_t n);

// Row of the regularized interaction kernel: for fixed target radius r and
// source radii s[], accumulates sum_j fw[j] * mean_k glw[k]*q(r,s[j],t[k])^{-e}
// with q = r^2 + s^2 + eps^2 - 2 r s t. Exponent e = (d-2)/2; glt/glw are
// Gauss-Legendre nodes/weights on [-1,1] (weights pre-divided by 2).
double riesz_row(double r, const double* s, const double* fw, std::size_t n,
                 const double* glt, const double* glw, std::size_t ngl,
                 double eps2, double exponent);

// Scalar reference implementations, always available (equivalence tests).
namespace ref {
double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
void pow_array(const double* x, double p, double* out, std::size_t n);
double sum_pow(const double* x, double p, const double* w, std::size_t n);
double riesz_row(double r, const double* s, const double* fw, std::size_t n,
                 const double* glt, const double* glw, std::size_t ngl,
                 double eps2, double exponent);
}  // namespace ref

#if defined(__x86_64__)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
void pow_array(const double* x, double p, double* out, std::size_t n);
double sum_pow(const double* x, double p, const double* w, std::size_t n);
double riesz_row(double r, const double* s, const double* fw, std::size_t n,
                 const double* glt, const double* glw, std::size_t ngl,
                 double eps2, double exponent);
}  // namespace avx2
#endif

}  // namespace critchemo::kernels

#endif
