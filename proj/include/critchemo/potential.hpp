// potential.hpp -- radial quadrature, norms, moments, Newtonian and
// regularized Riesz potentials.
#ifndef CRITCHEMO_POTENTIAL_HPP
#define CRITCHEMO_POTENTIAL_HPP

#include "critchemo/core.hpp"

namespace critchemo {

/// Quadrature approximation of the full-space integral of a density.
double integrate(const RadialField& f);

/// (integral of f^p dx)^{1/p}, p >= 1.
double lp_norm(const RadialField& f, double p);

/// integral of |x|^2 (u + v) dx.
double second_moment(const RadialField& u, const RadialField& v);

/// Solves -Delta c = f with decay at infinity for radial f supported inside
/// the grid; equals c_d |x|^{2-d} * f. Enclosed-charge ODE form, O(n).
RadialField newtonian_potential(const RadialField& f);

/// Solves both potentials of a pair in one fused pass (the inner loops are
/// latency-bound prefix sums; interleaving the two fields doubles throughput).
/// Outputs must already be sized on the same grid.
void newtonian_potential_pair(const RadialField& u, const RadialField& v,
                              RadialField& zu, RadialField& cv);

/// Regularized Riesz potential R_eps * f with
/// R_eps(x) = c_d (|x|^2 + eps^2)^{-(d-2)/2}, via a spherical-mean kernel
/// evaluated with Gauss-Legendre quadrature over the polar angle.
RadialField regularized_potential(const RadialField& f, double eps,
                                  std::size_t n_polar = 32);

/// Fraction of total mass truncated by the tail closure (reported, not thrown).
double tail_mass_fraction(const RadialField& f, double inner_fraction);

namespace detail {
// c_d for the grid's dimension, cached on the field's grid parameters.
double c_d_of(const RadialGrid& g);
}  // namespace detail

}  // namespace critchemo

#endif
