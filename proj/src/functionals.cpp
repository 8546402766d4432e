#include "critchemo/functionals.hpp"

#include <cmath>

#include "critchemo/interp.hpp"
#include "critchemo/kernels.hpp"
#include "critchemo/potential.hpp"

namespace critchemo {

EnergyReport energy_report(const RadialField& u, const RadialField& v, const Params& p) {
    EnergyReport rep;
    rep.int_u_m1 = kernels::sum_pow(u.values.data(), p.m1, u.grid->weights.data(), u.size());
    rep.int_v_m2 = kernels::sum_pow(v.values.data(), p.m2, v.grid->weights.data(), v.size());
    rep.diffusion1 = rep.int_u_m1 / (p.m1 - 1.0);
    rep.diffusion2 = rep.int_v_m2 / (p.m2 - 1.0);
    // h(u,v) through the potential solve: int u * (K*v) with c_d K*v = newtonian(v)
    const RadialField cv = newtonian_potential(v);
    rep.h = kernels::dot3(u.values.data(), cv.values.data(), u.grid->weights.data(),
                          u.size()) / p.c_d;
    rep.interaction = p.c_d * rep.h;
    rep.free_energy = rep.diffusion1 + rep.diffusion2 - rep.interaction;
    if (!std::isfinite(rep.free_energy))
        throw Error(ErrorCode::NonFinite, "energy_report: non-finite integral");
    rep.mass1 = integrate(u);
    rep.mass2 = integrate(v);
    rep.norm_u_m1 = std::pow(rep.int_u_m1, 1.0 / p.m1);
    rep.norm_v_m2 = std::pow(rep.int_v_m2, 1.0 / p.m2);
    rep.hls_ratio = (rep.norm_u_m1 > 0.0 && rep.norm_v_m2 > 0.0)
                        ? rep.h / (rep.norm_u_m1 * rep.norm_v_m2)
                        : 0.0;
    rep.second_moment = second_moment(u, v);
    return rep;
}

double free_energy(const RadialField& u, const RadialField& v, const Params& p) {
    const double iu = kernels::sum_pow(u.values.data(), p.m1, u.grid->weights.data(), u.size());
    const double iv = kernels::sum_pow(v.values.data(), p.m2, v.grid->weights.data(), v.size());
    const RadialField cv = newtonian_potential(v);
    const double inter = kernels::dot3(u.values.data(), cv.values.data(),
                                       u.grid->weights.data(), u.size());
    return iu / (p.m1 - 1.0) + iv / (p.m2 - 1.0) - inter;
}

std::pair<RadialField, RadialField> rescale(const RadialField& u, const RadialField& v,
                                            double lambda, const Params& p) {
    if (!(lambda > 0.0)) throw Error(ErrorCode::BadConfig, "rescale needs lambda > 0");
    const RadialGrid& g = *u.grid;
    const double denom = p.m1 + p.m2 - p.m1 * p.m2;
    const double au = std::pow(lambda, 2.0 * p.m2 / denom);
    const double av = std::pow(lambda, 2.0 * p.m1 / denom);
    RadialField uo(g, u.kind), vo(g, v.kind);
    MonotoneInterp iu(g.r, u.values), iv(g.r, v.values);
    for (std::size_t i = 0; i < g.size(); ++i) {
        uo.values[i] = std::max(0.0, au * iu(lambda * g.r[i]));
        vo.values[i] = std::max(0.0, av * iv(lambda * g.r[i]));
    }
    return {std::move(uo), std::move(vo)};
}

double pohozaev_residual(const RadialField& U, const RadialField& V, const Params& p) {
    const EnergyReport rep = energy_report(U, V, p);
    const double lhs = 2.0 * p.d * (rep.int_u_m1 + rep.int_v_m2);
    const double rhs = 2.0 * p.c_d * (p.d - 2.0) * rep.h;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
}

double moment_rate(const RadialField& u, const RadialField& v, const Params& p) {
    const EnergyReport rep = energy_report(u, v, p);
    const double a1 = 2.0 * p.d - 2.0 * (p.d - 2.0) / (p.m1 - 1.0);
    const double a2 = 2.0 * p.d - 2.0 * (p.d - 2.0) / (p.m2 - 1.0);
    return a1 * rep.int_u_m1 + a2 * rep.int_v_m2 + 2.0 * (p.d - 2.0) * rep.free_energy;
}

namespace {

// - int f |d/dr(m/(m-1) f^{m-1} - pot)|^2 dx over the numerical support of f
double species_dissipation(const RadialField& f, const RadialField& pot, double m) {
    const RadialGrid& g = *f.grid;
    const std::size_t n = g.size();
    const double cutoff = 1e-14 * f.max_abs();
    std::vector<double> mu(n);
    kernels::pow_array(f.values.data(), m - 1.0, mu.data(), n);
    for (std::size_t i = 0; i < n; ++i)
        mu[i] = m / (m - 1.0) * mu[i] - pot.values[i];
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (f.values[i] <= cutoff) continue;
        double grad;
        if (i == 0) {
            grad = (mu[1] - mu[0]) / (g.r[1] - g.r[0]);  // Neumann symmetry at r=0
        } else if (i == n - 1) {
            grad = (mu[n - 1] - mu[n - 2]) / (g.r[n - 1] - g.r[n - 2]);
        } else {
            grad = (mu[i + 1] - mu[i - 1]) / (g.r[i + 1] - g.r[i - 1]);
        }
        acc -= f.values[i] * grad * grad * g.weights[i];
    }
    return acc;
}

}  // namespace

double dissipation_rate(const RadialField& u, const RadialField& v, const Params& p) {
    if (u.max_abs() == 0.0 && v.max_abs() == 0.0) return 0.0;
    const RadialField c = newtonian_potential(v);
    const RadialField z = newtonian_potential(u);
    return species_dissipation(u, c, p.m1) + species_dissipation(v, z, p.m2);
}

double energy_barrier(double x, double y, double cstar, const Params& p) {
    if (!(x >= 0.0 && y >= 0.0 && cstar > 0.0))
        throw Error(ErrorCode::BadConfig, "energy_barrier needs x,y >= 0 and cstar > 0");
    return x / (p.m1 - 1.0) + y / (p.m2 - 1.0) -
           p.c_d * cstar * std::pow(x, 1.0 / p.m1) * std::pow(y, 1.0 / p.m2);
}

}  // namespace critchemo
