#include "critchemo/core.hpp"

#include <cmath>

namespace critchemo {

bool Params::symmetric_case() const {
    const double ms = 2.0 * d / (d + 2.0);
    return std::abs(m1 - ms) <= 16 * curve_tol && std::abs(m2 - ms) <= 16 * curve_tol;
}

Params validate_params(int d, double m1, double m2, double curve_tol) {
    if (d < 3)
        throw Error(ErrorCode::DimensionTooSmall,
                    "dimension d must be >= 3, got " + std::to_string(d));
    const double upper = 2.0 - 2.0 / d;
    if (!(m1 > 1.0 && m1 < upper))
        throw Error(ErrorCode::RangeViolation,
                    "m1 = " + std::to_string(m1) + " outside (1, 2-2/d)");
    if (!(m2 > 1.0 && m2 < upper))
        throw Error(ErrorCode::RangeViolation,
                    "m2 = " + std::to_string(m2) + " outside (1, 2-2/d)");
    const double curve = 1.0 / m1 + 1.0 / m2 - (d + 2.0) / d;
    if (!(std::abs(curve) <= curve_tol))
        throw Error(ErrorCode::CurveViolation,
                    "1/m1 + 1/m2 - (d+2)/d = " + std::to_string(curve) +
                        " exceeds curve_tol");
    Params p;
    p.d = d;
    p.m1 = m1;
    p.m2 = m2;
    p.curve_tol = curve_tol;
    p.alpha_d = std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
    p.c_d = 1.0 / (d * (d - 2.0) * p.alpha_d);
    p.surface_d = d * p.alpha_d;
    return p;
}

double curve_m2(int d, double m1) {
    return 1.0 / ((d + 2.0) / d - 1.0 / m1);
}

RadialGrid make_grid(const Params& p, double r_max, std::size_t n, double stretch) {
    if (!(r_max > 0.0) || n < 16)
        throw Error(ErrorCode::BadGrid, "need r_max > 0 and n >= 16");
    if (!(stretch >= 1.0))
        throw Error(ErrorCode::BadGrid, "stretch must be >= 1");
    RadialGrid g;
    g.d = p.d;
    g.r_max = r_max;
    g.stretch = stretch;
    g.edges.resize(n + 1);
    g.edges[0] = 0.0;
    if (stretch == 1.0) {
        for (std::size_t i = 1; i <= n; ++i)
            g.edges[i] = r_max * double(i) / double(n);
    } else {
        // h_i = h0 * stretch^i, summed to r_max
        const double total = (std::pow(stretch, double(n)) - 1.0) / (stretch - 1.0);
        const double h0 = r_max / total;
        double h = h0, acc = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            acc += h;
            g.edges[i] = acc;
            h *= stretch;
        }
        g.edges[n] = r_max;
    }
    g.r.resize(n);
    g.weights.resize(n);
    g.edge_pow_d.resize(n + 1);
    g.r_pow_d.resize(n);
    g.inv_r_pow.resize(n);
    for (std::size_t i = 0; i <= n; ++i)
        g.edge_pow_d[i] = std::pow(g.edges[i], p.d) / p.d;
    for (std::size_t i = 0; i < n; ++i) {
        g.r[i] = 0.5 * (g.edges[i] + g.edges[i + 1]);
        g.weights[i] = p.surface_d * (g.edge_pow_d[i + 1] - g.edge_pow_d[i]);
        g.r_pow_d[i] = std::pow(g.r[i], p.d) / p.d;
        g.inv_r_pow[i] = std::pow(g.r[i], 1 - p.d);
    }
    return g;
}

double RadialField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

bool RadialField::finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

void RadialField::check(const char* what) const {
    if (!finite())
        throw Error(ErrorCode::NonFinite, std::string(what) + ": non-finite value");
    if (kind == FieldKind::Density)
        for (double v : values)
            if (v < 0.0)
                throw Error(ErrorCode::NonFinite,
                            std::string(what) + ": negative density value");
}

}  // namespace critchemo
