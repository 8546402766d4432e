#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "critchemo/functionals.hpp"
#include "critchemo/potential.hpp"
#include "critchemo/stationary.hpp"

using namespace critchemo;

namespace {

const Params p3 = validate_params(3, 1.2, 1.2);

RadialField gaussian(const RadialGrid& g, double amp, double s) {
    RadialField f(g);
    for (std::size_t i = 0; i < g.size(); ++i)
        f.values[i] = amp * std::exp(-g.r[i] * g.r[i] / (2.0 * s * s));
    return f;
}

}  // namespace

TEST_CASE("energy report components and the gaussian self-interaction") {
    const RadialGrid g = make_grid(p3, 40.0, 2048);
    const RadialField u = gaussian(g, 1.0, 1.0);
    const EnergyReport rep = energy_report(u, u, p3);

    // int u^m against the closed form (2 pi / m)^{3/2} s^3 for unit amplitude
    const double want_ium = std::pow(2.0 * M_PI / 1.2, 1.5);
    CHECK(rep.int_u_m1 == doctest::Approx(want_ium).epsilon(2e-4));
    CHECK(rep.diffusion1 == doctest::Approx(want_ium / 0.2).epsilon(2e-4));
    CHECK(rep.diffusion2 == doctest::Approx(rep.diffusion1).epsilon(1e-12));

    // h(u,u) for unit gaussians: int int u(x)u(y)/|x-y| = (2 pi)^3 * ... known:
    // with u = exp(-r^2/2), mass M = (2pi)^{3/2} and h = M^2 / sqrt(2 pi) * ...
    // use the radial formula h = int u * (newtonian(u)/c_d)
    const RadialField cu = newtonian_potential(u);
    double h_direct = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        h_direct += u.values[i] * cu.values[i] * g.weights[i] / p3.c_d;
    CHECK(rep.h == doctest::Approx(h_direct).epsilon(1e-12));
    CHECK(rep.interaction == doctest::Approx(p3.c_d * rep.h).epsilon(1e-12));
    CHECK(rep.free_energy ==
          doctest::Approx(rep.diffusion1 + rep.diffusion2 - rep.interaction).epsilon(1e-12));
    CHECK(rep.hls_ratio == doctest::Approx(rep.h / (rep.norm_u_m1 * rep.norm_v_m2)));
}

TEST_CASE("free_energy agrees with the full report") {
    const RadialGrid g = make_grid(p3, 30.0, 1024);
    const RadialField u = gaussian(g, 2.0, 1.5);
    const RadialField v = gaussian(g, 1.0, 2.5);
    const EnergyReport rep = energy_report(u, v, p3);
    CHECK(free_energy(u, v, p3) == doctest::Approx(rep.free_energy).epsilon(1e-12));
}

TEST_CASE("hls ratio never exceeds the theoretical upper bound") {
    const RadialGrid g = make_grid(p3, 30.0, 512);
    const double bound = hls_upper_bound(p3);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> amp(0.1, 5.0), width(0.5, 6.0);
    for (int k = 0; k < 200; ++k) {
        const RadialField u = gaussian(g, amp(rng), width(rng));
        const RadialField v = gaussian(g, amp(rng), width(rng));
        const EnergyReport rep = energy_report(u, v, p3);
        CHECK(rep.hls_ratio <= bound);
        CHECK(rep.hls_ratio > 0.0);
    }
}

TEST_CASE("scaling family preserves free energy and critical norms on the curve") {
    const RadialGrid g = make_grid(p3, 60.0, 2048);
    // smooth decaying pair, not stationary
    const RadialField u = gaussian(g, 1.0, 3.0);
    const RadialField v = gaussian(g, 0.7, 2.0);
    const EnergyReport r0 = energy_report(u, v, p3);
    for (const double lam : {0.7, 1.3}) {
        auto [ul, vl] = rescale(u, v, lam, p3);
        const EnergyReport rl = energy_report(ul, vl, p3);
        CHECK(rl.norm_u_m1 == doctest::Approx(r0.norm_u_m1).epsilon(2e-3));
        CHECK(rl.norm_v_m2 == doctest::Approx(r0.norm_v_m2).epsilon(2e-3));
        CHECK(rl.free_energy == doctest::Approx(r0.free_energy).epsilon(5e-3));
    }
    CHECK_THROWS_AS(rescale(u, v, -1.0, p3), Error);
}

TEST_CASE("pohozaev residual: zero only at stationarity") {
    const RadialGrid g = make_grid(p3, 60.0, 512);
    const RadialField u = gaussian(g, 1.0, 2.0);
    CHECK(pohozaev_residual(u, u, p3) > 1e-2);  // generic data violate it
    const SteadyState s = solve_steady(p3, g);
    CHECK(pohozaev_residual(s.U, s.V, p3) < 1e-6);
    RadialField zero(g);
    CHECK(pohozaev_residual(zero, zero, p3) == 0.0);  // 0/0 convention
}

TEST_CASE("moment rate vanishes at the steady state") {
    const RadialGrid g = make_grid(p3, 60.0, 1024);
    const SteadyState s = solve_steady(p3, g);
    const EnergyReport rep = energy_report(s.U, s.V, p3);
    const double scale = 2.0 * p3.d * (rep.int_u_m1 + rep.int_v_m2);
    CHECK(std::abs(moment_rate(s.U, s.V, p3)) <= 1e-3 * scale);
}

TEST_CASE("dissipation rate is nonpositive and zero at the steady state") {
    const RadialGrid g = make_grid(p3, 60.0, 512);
    const RadialField u = gaussian(g, 1.0, 2.0);
    CHECK(dissipation_rate(u, u, p3) < 0.0);
    const SteadyState s = solve_steady(p3, g);
    const double d0 = std::abs(dissipation_rate(u, u, p3));
    CHECK(std::abs(dissipation_rate(s.U, s.V, p3)) < 1e-4 * d0);
}

TEST_CASE("energy barrier: g vanishes with correct curvature sign structure") {
    // on the curve, g(x*, y*) has a saddle/maximum along the ray; sample the
    // 1-homogeneous structure g(tx, ty) for the symmetric case
    const double cstar = hls_exact_symmetric(3);
    const SharpConstant cs{cstar, 0.0, cstar, {}, 0};
    const Thresholds th = critical_thresholds(cs, p3);
    const double gstar = energy_barrier(th.x_star, th.y_star, cstar, p3);
    // at the threshold point the barrier is positive (strictly below the
    // supremum of g along the ray through (x*, y*))
    CHECK(gstar > 0.0);
    // monotone structure: increasing interaction constant lowers the barrier
    double prev = gstar;
    for (const double f : {1.1, 1.2, 1.3, 1.4, 1.5}) {
        const double gv = energy_barrier(th.x_star, th.y_star, f * cstar, p3);
        CHECK(gv < prev);
        prev = gv;
    }
    CHECK_THROWS_AS(energy_barrier(-1.0, 1.0, cstar, p3), Error);
}
