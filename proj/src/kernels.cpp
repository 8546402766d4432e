#include "critchemo/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace critchemo::kernels {

namespace ref {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

void pow_array(const double* x, double p, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = (x[i] == 0.0 && p > 0.0) ? 0.0 : std::pow(x[i], p);
}

double sum_pow(const double* x, double p, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] != 0.0) s += w[i] * std::pow(x[i], p);
    return s;
}

double riesz_row(double r, const double* s, const double* fw, std::size_t n,
                 const double* glt, const double* glw, std::size_t ngl,
                 double eps2, double exponent) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (fw[j] == 0.0) continue;
        const double a = r * r + s[j] * s[j] + eps2;
        const double b = 2.0 * r * s[j];
        double mean = 0.0;
        for (std::size_t k = 0; k < ngl; ++k)
            mean += glw[k] * std::pow(a - b * glt[k], -exponent);
        acc += fw[j] * mean;
    }
    return acc;
}

}  // namespace ref

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Isa g_active = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;

}  // namespace

Isa active() { return g_active; }

void force(Isa isa) {
    if (isa == Isa::Avx2 && !cpu_has_avx2()) isa = Isa::Scalar;
    g_active = isa;
}

Isa parse_isa(const std::string& name) {
    if (name == "scalar") return Isa::Scalar;
    if (name == "avx2") return Isa::Avx2;
    if (name == "auto") return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
    throw std::invalid_argument("unknown simd mode: " + name);
}

const char* isa_name(Isa isa) {
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

#if defined(__x86_64__)
#define CRITCHEMO_DISPATCH(fn, ...) \
    return g_active == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : ref::fn(__VA_ARGS__)
#else
#define CRITCHEMO_DISPATCH(fn, ...) return ref::fn(__VA_ARGS__)
#endif

double dot(const double* a, const double* b, std::size_t n) {
    CRITCHEMO_DISPATCH(dot, a, b, n);
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    CRITCHEMO_DISPATCH(dot3, a, b, c, n);
}

void pow_array(const double* x, double p, double* out, std::size_t n) {
    CRITCHEMO_DISPATCH(pow_array, x, p, out, n);
}

double sum_pow(const double* x, double p, const double* w, std::size_t n) {
    CRITCHEMO_DISPATCH(sum_pow, x, p, w, n);
}

double riesz_row(double r, const double* s, const double* fw, std::size_t n,
                 const double* glt, const double* glw, std::size_t ngl,
                 double eps2, double exponent) {
    CRITCHEMO_DISPATCH(riesz_row, r, s, fw, n, glt, glw, ngl, eps2, exponent);
}

}  // namespace critchemo::kernels
