// stationary.hpp -- stationary Euler-Lagrange solver, closed-form symmetric
// extremal, sharp-constant estimation, and the critical thresholds.
#ifndef CRITCHEMO_STATIONARY_HPP
#define CRITCHEMO_STATIONARY_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "critchemo/core.hpp"

namespace critchemo {

struct SteadyState {
    RadialField U, V;
    double norm_u_m1 = 0.0;
    double norm_v_m2 = 0.0;
    double int_u_m1 = 0.0;   // int U^m1
    double int_v_m2 = 0.0;   // int V^m2
    double mass1 = 0.0, mass2 = 0.0;
    double free_energy = 0.0;
    double hls_ratio = 0.0;
    double pohozaev = 0.0;
    double el_residual = 0.0;       // sup-norm EL defect, relative
    double offset1 = 0.0, offset2 = 0.0;  // mean chemical-potential offsets
    int iterations = 0;
    bool converged = false;
};

struct SharpConstant {
    double cstar = 0.0;         // estimated C* (the J ratio, c_d-free)
    double upper_bound = 0.0;   // general HLS bound for (d, d-2, m1, m2)
    std::optional<double> exact_symmetric;  // Gamma-formula value when m1=m2=2d/(d+2)
    SteadyState extremal;
    int iterations = 0;
};

struct Thresholds {
    double x_star = 0.0;
    double y_star = 0.0;
    double A = 0.0;  // m1(m2-1) / (m2(m1-1))
};

/// Damped fixed-point solve of the stationary system. The scaling family
/// makes solutions a one-parameter family; the iteration runs in the
/// amplitude-normalized gauge and the returned pair is the exact discrete
/// fixed point (its central value is reported, not prescribed).
/// `normalization` scales the initial profile. damping in (0,1] acts on the
/// log of the profile (1 = undamped).
SteadyState solve_steady(const Params& p, const RadialGrid& grid,
                         double normalization = 1.0, double damping = 1.0,
                         double tol = 1e-10, int max_iter = 60000);

/// Samples the symmetric-case closed form U = c (lambda/(lambda^2+r^2))^{(d+2)/2}
/// with the amplitude c fixed by collocation of the EL equation at r = 0.
SteadyState closed_form_steady(const Params& p, const RadialGrid& grid, double lambda);

/// Alternating maximization of J(u,v) from a seeded random smooth start.
SharpConstant estimate_sharp_constant(const Params& p, const RadialGrid& grid,
                                      std::uint64_t seed, double tol = 1e-12,
                                      int max_iter = 20000);

/// General HLS upper bound for exponents (m1, m2) and kernel power d-2.
double hls_upper_bound(const Params& p);

/// Closed-form sharp constant for the diagonal case q = r = 2d/(d+2).
double hls_exact_symmetric(int d);

Thresholds critical_thresholds(const SharpConstant& cs, const Params& p);

/// JSON export/import of a steady state together with params and grid spec.
std::string steady_to_json(const SteadyState& s, const Params& p,
                           const std::string& config_hash);
SteadyState steady_from_json(const std::string& text, Params& p_out, RadialGrid& grid_out);

}  // namespace critchemo

#endif
