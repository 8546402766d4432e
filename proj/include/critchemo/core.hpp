// core.hpp -- validated parameters, radial grids, field containers.
#ifndef CRITCHEMO_CORE_HPP
#define CRITCHEMO_CORE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace critchemo {

inline constexpr const char* kVersion = "0.1.0";

enum class ErrorCode {
    CurveViolation,
    RangeViolation,
    DimensionTooSmall,
    BadGrid,
    NotSymmetricCase,
    NoConvergence,
    Divergence,
    NonFinite,
    NotConverged,
    TooFewSamples,
    BadConfig,
};

struct Error : std::runtime_error {
    ErrorCode code;
    Error(ErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

/// Model parameters on the energy-critical curve 1/m1 + 1/m2 = (d+2)/d,
/// with the derived dimensional constants.
struct Params {
    int d = 3;
    double m1 = 1.2;
    double m2 = 1.2;
    double alpha_d = 0.0;   // volume of the unit ball
    double c_d = 0.0;       // Newtonian constant 1/(d(d-2)*alpha_d)
    double surface_d = 0.0; // area of the unit sphere
    double curve_tol = 1e-12;

    // Norm-preserving scaling exponents; both equal m1, m2 on the curve.
    double p1() const { return (m1 + m2 - m1 * m2) * d / (2.0 * m2); }
    double p2() const { return (m1 + m2 - m1 * m2) * d / (2.0 * m1); }
    bool symmetric_case() const;
};

Params validate_params(int d, double m1, double m2, double curve_tol = 1e-12);

/// Solve the critical curve for m2 given m1 (used to build exact pairs).
double curve_m2(int d, double m1);

/// Cell-centered finite-volume grid on [0, r_max], optionally with geometric
/// edge spacing (stretch > 1 widens cells outward).
struct RadialGrid {
    int d = 3;
    double r_max = 0.0;
    double stretch = 1.0;
    std::vector<double> r;       // cell centers, size n
    std::vector<double> edges;   // size n+1, edges[0] = 0
    std::vector<double> weights; // d-volume per cell

    // cached geometry powers for the potential solve
    std::vector<double> edge_pow_d;   // edges^d / d, size n+1
    std::vector<double> r_pow_d;      // r^d / d
    std::vector<double> inv_r_pow;    // r^{1-d}

    std::size_t size() const { return r.size(); }
};

RadialGrid make_grid(const Params& p, double r_max, std::size_t n, double stretch = 1.0);

enum class FieldKind { Density, Potential };

struct RadialField {
    const RadialGrid* grid = nullptr;
    std::vector<double> values;
    FieldKind kind = FieldKind::Density;

    RadialField() = default;
    RadialField(const RadialGrid& g, FieldKind k = FieldKind::Density)
        : grid(&g), values(g.size(), 0.0), kind(k) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    double max_abs() const;
    bool finite() const;
    void check(const char* what) const;  // throws NonFinite / negative density
};

}  // namespace critchemo

#endif
