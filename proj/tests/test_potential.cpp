#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "critchemo/potential.hpp"

using namespace critchemo;

namespace {

const Params p3 = validate_params(3, 1.2, 1.2);

RadialField gaussian(const RadialGrid& g, double s) {
    RadialField f(g);
    for (std::size_t i = 0; i < g.size(); ++i)
        f.values[i] = std::exp(-g.r[i] * g.r[i] / (2.0 * s * s));
    return f;
}

RadialField ball(const RadialGrid& g, double R) {
    RadialField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) f.values[i] = g.r[i] <= R ? 1.0 : 0.0;
    return f;
}

}  // namespace

TEST_CASE("integrate: gaussian mass equals (2 pi)^{3/2} s^3") {
    const RadialGrid g = make_grid(p3, 30.0, 2048);
    const RadialField f = gaussian(g, 1.5);
    const double want = std::pow(2.0 * M_PI, 1.5) * std::pow(1.5, 3);
    CHECK(integrate(f) == doctest::Approx(want).epsilon(2e-4));
}

TEST_CASE("lp_norm: indicator of the unit ball") {
    const RadialGrid g = make_grid(p3, 4.0, 4096);
    const RadialField f = ball(g, 1.0);
    const double vol = p3.alpha_d;
    CHECK(lp_norm(f, 1.0) == doctest::Approx(vol).epsilon(1e-3));
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(vol)).epsilon(1e-3));
    CHECK_THROWS_AS(lp_norm(f, 0.5), Error);
}

TEST_CASE("second moment of a gaussian: 3 s^2 per unit mass, doubled for (u,u)") {
    const RadialGrid g = make_grid(p3, 40.0, 2048);
    const RadialField f = gaussian(g, 2.0);
    const double mass = integrate(f);
    CHECK(second_moment(f, f) == doctest::Approx(2.0 * 3.0 * 4.0 * mass).epsilon(2e-4));
}

TEST_CASE("newtonian potential of the unit ball matches the exact solution") {
    // -Delta c = 1_{B_1}: c(r) = (3 - r^2)/6 * c_d * 4pi ... in plain form
    // c(r) = (1/6)(3 - r^2)/ (4pi c_d = 1) -- use the classical formulas
    const RadialGrid g = make_grid(p3, 8.0, 4096);
    const RadialField f = ball(g, 1.0);
    const RadialField c = newtonian_potential(f);
    for (std::size_t i = 0; i < g.size(); i += 97) {
        const double r = g.r[i];
        const double want = r <= 1.0 ? (3.0 - r * r) / 6.0 : 1.0 / (3.0 * r);
        CHECK(c.values[i] == doctest::Approx(want).epsilon(2e-4));
    }
}

TEST_CASE("newtonian potential: -Delta c = f residual converges at second order") {
    double err_prev = 0.0;
    std::vector<double> errs;
    for (const std::size_t n : {256u, 512u, 1024u}) {
        const RadialGrid g = make_grid(p3, 20.0, n);
        const RadialField f = gaussian(g, 1.0);
        const RadialField c = newtonian_potential(f);
        // discrete Laplacian of c at interior cells (uniform spacing)
        const double h = g.r[1] - g.r[0];
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < g.size() / 2; ++i) {
            const double lap = (c.values[i + 1] - 2.0 * c.values[i] + c.values[i - 1]) /
                                   (h * h) +
                               (p3.d - 1.0) / g.r[i] * (c.values[i + 1] - c.values[i - 1]) /
                                   (2.0 * h);
            worst = std::max(worst, std::abs(lap + f.values[i]));
        }
        errs.push_back(worst);
        err_prev = worst;
    }
    (void)err_prev;
    CHECK(errs[0] / errs[1] > 3.0);  // ~4x per refinement
    CHECK(errs[1] / errs[2] > 3.0);
    CHECK(errs[2] < 1e-3);
}

TEST_CASE("newtonian potential is positive and non-increasing for nonnegative f") {
    const RadialGrid g = make_grid(p3, 25.0, 1024);
    const RadialField f = gaussian(g, 2.5);
    const RadialField c = newtonian_potential(f);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(c.values[i] > 0.0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(c.values[i] <= c.values[i - 1]);
}

TEST_CASE("newtonian far field approaches Q_total * c_d * surface / r^{d-2} scaling") {
    const RadialGrid g = make_grid(p3, 50.0, 2048);
    const RadialField f = gaussian(g, 1.0);
    const RadialField c = newtonian_potential(f);
    const double mass = integrate(f);
    const std::size_t i = g.size() - 10;
    const double want = p3.c_d * mass / g.r[i];  // c_d M / r^{d-2}, d = 3
    CHECK(c.values[i] == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("regularized potential converges to the newtonian one as eps -> 0") {
    const RadialGrid g = make_grid(p3, 15.0, 192);
    const RadialField f = gaussian(g, 1.5);
    const RadialField c0 = newtonian_potential(f);
    double prev = 1e300;
    for (const double eps : {0.5, 0.25, 0.125, 0.0625}) {
        const RadialField ce = regularized_potential(f, eps);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            worst = std::max(worst, std::abs(ce.values[i] - c0.values[i]) / c0.values[0]);
        CHECK(worst < prev);  // monotone improvement in eps
        prev = worst;
    }
    CHECK(prev < 5e-3);
}

TEST_CASE("regularized kernel is symmetric: int u R*v = int v R*u") {
    const RadialGrid g = make_grid(p3, 12.0, 128);
    const RadialField u = gaussian(g, 1.0);
    const RadialField v = ball(g, 2.0);
    const RadialField rv = regularized_potential(v, 0.3);
    const RadialField ru = regularized_potential(u, 0.3);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        a += u.values[i] * rv.values[i] * g.weights[i];
        b += v.values[i] * ru.values[i] * g.weights[i];
    }
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("tail_mass_fraction") {
    const RadialGrid g = make_grid(p3, 10.0, 256);
    const RadialField f = ball(g, 5.0);
    CHECK(tail_mass_fraction(f, 0.8) == doctest::Approx(0.0));
    CHECK(tail_mass_fraction(f, 0.25) == doctest::Approx(1.0 - std::pow(0.5, 3)).epsilon(0.02));
}
