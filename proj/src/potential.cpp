#include "critchemo/potential.hpp"

#include <cmath>

#include "critchemo/kernels.hpp"

namespace critchemo {

namespace detail {

double c_d_of(const RadialGrid& g) {
    const double alpha_d = std::pow(M_PI, g.d / 2.0) / std::tgamma(g.d / 2.0 + 1.0);
    return 1.0 / (g.d * (g.d - 2.0) * alpha_d);
}

}  // namespace detail

double integrate(const RadialField& f) {
    return kernels::dot(f.values.data(), f.grid->weights.data(), f.size());
}

double lp_norm(const RadialField& f, double p) {
    if (!(p >= 1.0)) throw Error(ErrorCode::BadConfig, "lp_norm needs p >= 1");
    if (p == 1.0) return integrate(f);
    const double s = kernels::sum_pow(f.values.data(), p, f.grid->weights.data(), f.size());
    return std::pow(s, 1.0 / p);
}

double second_moment(const RadialField& u, const RadialField& v) {
    const RadialGrid& g = *u.grid;
    std::vector<double> r2w(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r2w[i] = g.r[i] * g.r[i] * g.weights[i];
    return kernels::dot(u.values.data(), r2w.data(), u.size()) +
           kernels::dot(v.values.data(), r2w.data(), v.size());
}

RadialField newtonian_potential(const RadialField& f) {
    const RadialGrid& g = *f.grid;
    const std::size_t n = g.size();
    const int d = g.d;
    RadialField c(g, FieldKind::Potential);

    // Q(x) = int_0^x s^{d-1} f(s) ds for piecewise-constant f
    std::vector<double> q_center(n);
    double q_edge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        q_center[i] = q_edge + f.values[i] * (g.r_pow_d[i] - g.edge_pow_d[i]);
        q_edge += f.values[i] * (g.edge_pow_d[i + 1] - g.edge_pow_d[i]);
    }
    const double q_total = q_edge;

    // c'(r) = -Q(r)/r^{d-1}; integrate inward from the far-field closure
    // c(r_max) = Q_total * r_max^{2-d} / (d-2).
    std::vector<double> slope(n);
    for (std::size_t i = 0; i < n; ++i)
        slope[i] = q_center[i] * g.inv_r_pow[i];
    const double slope_out = q_total / std::pow(g.r_max, d - 1);
    double acc = q_total * std::pow(g.r_max, 2 - d) / (d - 2.0);
    acc += 0.5 * (slope[n - 1] + slope_out) * (g.r_max - g.r[n - 1]);
    c.values[n - 1] = acc;
    for (std::size_t i = n - 1; i-- > 0;) {
        acc += 0.5 * (slope[i] + slope[i + 1]) * (g.r[i + 1] - g.r[i]);
        c.values[i] = acc;
    }
    return c;
}

void newtonian_potential_pair(const RadialField& u, const RadialField& v,
                              RadialField& zu, RadialField& cv) {
    const RadialGrid& g = *u.grid;
    const std::size_t n = g.size();
    const int d = g.d;
    thread_local std::vector<double> su, sv;
    su.resize(n);
    sv.resize(n);

    double qu_edge = 0.0, qv_edge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dc = g.r_pow_d[i] - g.edge_pow_d[i];
        const double de = g.edge_pow_d[i + 1] - g.edge_pow_d[i];
        su[i] = (qu_edge + u.values[i] * dc) * g.inv_r_pow[i];
        sv[i] = (qv_edge + v.values[i] * dc) * g.inv_r_pow[i];
        qu_edge += u.values[i] * de;
        qv_edge += v.values[i] * de;
    }
    const double inv_rpow_out = std::pow(g.r_max, 1 - d);
    const double tail = std::pow(g.r_max, 2 - d) / (d - 2.0);
    double au = qu_edge * tail, av = qv_edge * tail;
    au += 0.5 * (su[n - 1] + qu_edge * inv_rpow_out) * (g.r_max - g.r[n - 1]);
    av += 0.5 * (sv[n - 1] + qv_edge * inv_rpow_out) * (g.r_max - g.r[n - 1]);
    zu.values[n - 1] = au;
    cv.values[n - 1] = av;
    for (std::size_t i = n - 1; i-- > 0;) {
        const double h = 0.5 * (g.r[i + 1] - g.r[i]);
        au += (su[i] + su[i + 1]) * h;
        av += (sv[i] + sv[i + 1]) * h;
        zu.values[i] = au;
        cv.values[i] = av;
    }
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
void gauss_legendre(std::size_t n, std::vector<double>& t, std::vector<double>& w) {
    t.resize(n);
    w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        t[i] = x;
        w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

}  // namespace

RadialField regularized_potential(const RadialField& f, double eps, std::size_t n_polar) {
    if (!(eps > 0.0)) throw Error(ErrorCode::BadConfig, "regularized_potential needs eps > 0");
    const RadialGrid& g = *f.grid;
    const std::size_t n = g.size();
    const double c_d = detail::c_d_of(g);
    const double expo = (g.d - 2.0) / 2.0;

    std::vector<double> glt, glw;
    gauss_legendre(n_polar, glt, glw);
    for (double& x : glw) x *= 0.5;  // spherical mean over cos(theta)

    std::vector<double> fw(n);
    for (std::size_t i = 0; i < n; ++i) fw[i] = f.values[i] * g.weights[i];

    RadialField out(g, FieldKind::Potential);
    for (std::size_t i = 0; i < n; ++i)
        out.values[i] = c_d * kernels::riesz_row(g.r[i], g.r.data(), fw.data(), n,
                                                 glt.data(), glw.data(), n_polar,
                                                 eps * eps, expo);
    return out;
}

double tail_mass_fraction(const RadialField& f, double inner_fraction) {
    const RadialGrid& g = *f.grid;
    const double cut = inner_fraction * g.r_max;
    double inner = 0.0, total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double m = f.values[i] * g.weights[i];
        total += m;
        if (g.r[i] <= cut) inner += m;
    }
    return total > 0.0 ? 1.0 - inner / total : 0.0;
}

}  // namespace critchemo
