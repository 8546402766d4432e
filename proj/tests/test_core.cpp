#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "critchemo/core.hpp"

using namespace critchemo;

TEST_CASE("derived constants for d = 3") {
    const Params p = validate_params(3, 1.2, 1.2);
    CHECK(p.alpha_d == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
    CHECK(p.c_d == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(p.surface_d == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK(p.symmetric_case());
}

TEST_CASE("derived constants for d = 4 and d = 5") {
    // alpha_4 = pi^2/2, alpha_5 = 8 pi^2/15
    const double m4 = 2.0 * 4 / 6.0;  // symmetric case for d = 4
    const Params p4 = validate_params(4, m4, m4);
    CHECK(p4.alpha_d == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-14));
    const double m5 = 2.0 * 5 / 7.0;  // symmetric case for d = 5
    const Params p5 = validate_params(5, m5, m5);
    CHECK(p5.alpha_d == doctest::Approx(8.0 * M_PI * M_PI / 15.0).epsilon(1e-14));
}

TEST_CASE("scaling exponents collapse to (m1, m2) exactly on the curve") {
    for (const double m1 : {1.1, 1.15, 1.2, 1.25, 1.3}) {
        const Params p = validate_params(3, m1, curve_m2(3, m1));
        CHECK(std::abs(p.p1() - p.m1) <= 1e-12);
        CHECK(std::abs(p.p2() - p.m2) <= 1e-12);
    }
}

TEST_CASE("parameter validation rejects off-curve and out-of-range input") {
    CHECK_THROWS_AS(validate_params(2, 1.2, 1.2), Error);
    CHECK_THROWS_AS(validate_params(3, 1.2, 1.3), Error);   // off the curve
    CHECK_THROWS_AS(validate_params(3, 0.9, 1.2), Error);   // m1 <= 1
    CHECK_THROWS_AS(validate_params(3, 1.5, 1.0), Error);   // m1 >= 2 - 2/d
    try {
        validate_params(3, 1.2, 1.3);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code == ErrorCode::CurveViolation);
    }
}

TEST_CASE("curve_m2 satisfies the curve relation") {
    for (const double m1 : {1.1, 1.2, 1.25, 1.32}) {
        const double m2 = curve_m2(3, m1);
        CHECK(1.0 / m1 + 1.0 / m2 == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    }
}

TEST_CASE("uniform grid: weights sum to the ball volume") {
    const Params p = validate_params(3, 1.2, 1.2);
    const RadialGrid g = make_grid(p, 10.0, 128);
    double vol = 0.0;
    for (const double w : g.weights) vol += w;
    CHECK(vol == doctest::Approx(p.alpha_d * 1000.0).epsilon(1e-12));
    CHECK(g.edges.front() == 0.0);
    CHECK(g.edges.back() == doctest::Approx(10.0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g.r[i] > g.edges[i]);
        CHECK(g.r[i] < g.edges[i + 1]);
    }
}

TEST_CASE("stretched grid: edges increase geometrically and close the domain") {
    const Params p = validate_params(3, 1.2, 1.2);
    const RadialGrid g = make_grid(p, 10.0, 64, 1.05);
    CHECK(g.edges.back() == doctest::Approx(10.0).epsilon(1e-12));
    for (std::size_t i = 2; i < g.size(); ++i) {
        const double ratio = (g.edges[i + 1] - g.edges[i]) / (g.edges[i] - g.edges[i - 1]);
        CHECK(ratio == doctest::Approx(1.05).epsilon(1e-6));
    }
    double vol = 0.0;
    for (const double w : g.weights) vol += w;
    CHECK(vol == doctest::Approx(p.alpha_d * 1000.0).epsilon(1e-12));
}

TEST_CASE("grid validation") {
    const Params p = validate_params(3, 1.2, 1.2);
    CHECK_THROWS_AS(make_grid(p, -1.0, 64), Error);
    CHECK_THROWS_AS(make_grid(p, 10.0, 4), Error);
    CHECK_THROWS_AS(make_grid(p, 10.0, 64, 0.9), Error);
}

TEST_CASE("field check flags non-finite and negative densities") {
    const Params p = validate_params(3, 1.2, 1.2);
    const RadialGrid g = make_grid(p, 10.0, 32);
    RadialField f(g);
    f.values[3] = 1.0;
    CHECK_NOTHROW(f.check("f"));
    f.values[4] = -0.5;
    CHECK_THROWS_AS(f.check("f"), Error);
    f.values[4] = std::nan("");
    CHECK_THROWS_AS(f.check("f"), Error);
    CHECK(!f.finite());
}
