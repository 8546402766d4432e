// functionals.hpp -- free energy, interaction, HLS ratio, scaling transform,
// and the identity residuals used throughout the verification suites.
#ifndef CRITCHEMO_FUNCTIONALS_HPP
#define CRITCHEMO_FUNCTIONALS_HPP

#include <utility>

#include "critchemo/core.hpp"

namespace critchemo {

struct EnergyReport {
    double diffusion1 = 0.0;     // (1/(m1-1)) int u^m1
    double diffusion2 = 0.0;     // (1/(m2-1)) int v^m2
    double interaction = 0.0;    // c_d h(u,v)
    double free_energy = 0.0;    // diffusion1 + diffusion2 - interaction
    double hls_ratio = 0.0;      // J(u,v) = h / (||u||_m1 ||v||_m2)
    double mass1 = 0.0, mass2 = 0.0;
    double norm_u_m1 = 0.0, norm_v_m2 = 0.0;
    double second_moment = 0.0;
    double int_u_m1 = 0.0;       // int u^m1 (unweighted by 1/(m1-1))
    double int_v_m2 = 0.0;
    double h = 0.0;              // bilinear Riesz interaction, without c_d
};

EnergyReport energy_report(const RadialField& u, const RadialField& v, const Params& p);

/// Free energy only (cheaper path used by the dynamics sampling).
double free_energy(const RadialField& u, const RadialField& v, const Params& p);

/// The scaling family u_l(x) = l^{2m2/(m1+m2-m1m2)} u(l x) (and mirror for v)
/// resampled onto the input grid by monotone interpolation.
std::pair<RadialField, RadialField> rescale(const RadialField& u, const RadialField& v,
                                            double lambda, const Params& p);

/// Relative defect of 2d int U^m1 + 2d int V^m2 = 2 c_d (d-2) h(U,V);
/// 0/0 returns 0.
double pohozaev_residual(const RadialField& U, const RadialField& V, const Params& p);

/// Right-hand side of the second-moment evolution identity.
double moment_rate(const RadialField& u, const RadialField& v, const Params& p);

/// Discrete free-energy dissipation integrand, always <= 0 up to rounding.
/// Gradients by centered differences; cells with u below
/// 1e-14 * ||u||_inf are excluded from the velocity integrand.
double dissipation_rate(const RadialField& u, const RadialField& v, const Params& p);

/// g(x,y) = x/(m1-1) + y/(m2-1) - c_d C* x^{1/m1} y^{1/m2}.
double energy_barrier(double x, double y, double cstar, const Params& p);

}  // namespace critchemo

#endif
