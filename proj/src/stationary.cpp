#include "critchemo/stationary.hpp"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <json.hpp>

#include "critchemo/functionals.hpp"
#include "critchemo/kernels.hpp"
#include "critchemo/potential.hpp"

namespace critchemo {

namespace {

// Renormalize pot-powered update so the profile keeps central value 1.
void shape_update(const RadialField& pot, double m, double damping, RadialField& f) {
    const std::size_t n = f.size();
    const double p0 = pot.values[0];
    if (!(p0 > 0.0) || !std::isfinite(p0))
        throw Error(ErrorCode::Divergence, "steady iteration produced a degenerate potential");
    const double e = 1.0 / (m - 1.0);
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = pot.values[i] / p0;
    kernels::pow_array(next.data(), e, next.data(), n);
    if (damping >= 1.0) {
        f.values = std::move(next);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double cur = std::max(f.values[i], 1e-300);
            f.values[i] = std::exp((1.0 - damping) * std::log(cur) +
                                   damping * std::log(std::max(next[i], 1e-300)));
        }
    }
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Relative sup-norm defect of m/(m-1) f^{m-1} = pot, plus the mean offset
// over the support of f.
std::pair<double, double> el_defect(const RadialField& f, const RadialField& pot, double m) {
    const std::size_t n = f.size();
    std::vector<double> mu(n);
    kernels::pow_array(f.values.data(), m - 1.0, mu.data(), n);
    const double scale = pot.max_abs();
    const double cutoff = 1e-14 * f.max_abs();
    double sup = 0.0, acc = 0.0, vol = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double diff = m / (m - 1.0) * mu[i] - pot.values[i];
        sup = std::max(sup, std::abs(diff));
        if (f.values[i] > cutoff) {
            acc += diff * f.grid->weights[i];
            vol += f.grid->weights[i];
        }
    }
    return {scale > 0.0 ? sup / scale : 0.0, vol > 0.0 ? acc / vol : 0.0};
}

// Exact discrete amplitude solve: given unit-amplitude shapes, pick (a, b)
// so that (a u, b v) satisfies both EL equations at r = 0 exactly, making
// the pair a genuine fixed point of the discrete system.
SteadyState finish_state(const RadialField& us, const RadialField& vs, const Params& p,
                         const RadialGrid& grid, int iterations, bool converged) {
    const RadialField C = newtonian_potential(vs);
    const RadialField Z = newtonian_potential(us);
    const double k1 = (p.m1 - 1.0) / p.m1 * C.values[0];
    const double k2 = (p.m2 - 1.0) / p.m2 * Z.values[0];
    if (!(k1 > 0.0) || !(k2 > 0.0))
        throw Error(ErrorCode::Divergence, "amplitude solve: non-positive central potential");
    const double expo = 1.0 / ((p.m1 - 1.0) * (p.m2 - 1.0) - 1.0);
    const double a = std::pow(std::pow(k1, p.m2 - 1.0) * k2, expo);
    const double b = std::pow(a, p.m1 - 1.0) / k1;

    SteadyState s;
    s.U = RadialField(grid, FieldKind::Density);
    s.V = RadialField(grid, FieldKind::Density);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s.U.values[i] = a * us.values[i];
        s.V.values[i] = b * vs.values[i];
    }
    const EnergyReport rep = energy_report(s.U, s.V, p);
    s.norm_u_m1 = rep.norm_u_m1;
    s.norm_v_m2 = rep.norm_v_m2;
    s.int_u_m1 = rep.int_u_m1;
    s.int_v_m2 = rep.int_v_m2;
    s.mass1 = rep.mass1;
    s.mass2 = rep.mass2;
    s.free_energy = rep.free_energy;
    s.hls_ratio = rep.hls_ratio;
    const double lhs = 2.0 * p.d * (rep.int_u_m1 + rep.int_v_m2);
    const double rhs = 2.0 * p.c_d * (p.d - 2.0) * rep.h;
    s.pohozaev = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));

    RadialField potU(grid, FieldKind::Potential), potV(grid, FieldKind::Potential);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        potU.values[i] = b * C.values[i];  // newtonian(V)
        potV.values[i] = a * Z.values[i];  // newtonian(U)
    }
    const auto [e1, o1] = el_defect(s.U, potU, p.m1);
    const auto [e2, o2] = el_defect(s.V, potV, p.m2);
    s.el_residual = std::max(e1, e2);
    s.offset1 = o1;
    s.offset2 = o2;
    s.iterations = iterations;
    s.converged = converged;
    return s;
}

}  // namespace

SteadyState solve_steady(const Params& p, const RadialGrid& grid, double normalization,
                         double damping, double tol, int max_iter) {
    if (!(normalization > 0.0))
        throw Error(ErrorCode::BadConfig, "solve_steady: normalization must be > 0");
    if (!(damping > 0.0 && damping <= 1.0))
        throw Error(ErrorCode::BadConfig, "solve_steady: damping must be in (0, 1]");
    const std::size_t n = grid.size();
    RadialField u(grid), v(grid);
    const double w0 = 0.1 * grid.r_max;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = grid.r[i] / w0;
        u.values[i] = normalization * std::pow(1.0 + q * q, -0.5 * (p.d + 2));
        v.values[i] = u.values[i];
    }

    std::vector<double> u_prev, v_prev;
    int it = 0;
    for (; it < max_iter; ++it) {
        u_prev = u.values;
        v_prev = v.values;
        shape_update(newtonian_potential(v), p.m1, damping, u);
        shape_update(newtonian_potential(u), p.m2, damping, v);
        if (!u.finite() || !v.finite())
            throw Error(ErrorCode::Divergence, "solve_steady: iterate went non-finite");
        const double change = std::max(sup_diff(u.values, u_prev), sup_diff(v.values, v_prev));
        if (change <= tol && it > 0) { ++it; break; }
    }
    if (it >= max_iter)
        throw Error(ErrorCode::NoConvergence, "solve_steady: max_iter exceeded");
    return finish_state(u, v, p, grid, it, true);
}

SteadyState closed_form_steady(const Params& p, const RadialGrid& grid, double lambda) {
    if (!p.symmetric_case())
        throw Error(ErrorCode::NotSymmetricCase,
                    "closed form requires m1 = m2 = 2d/(d+2)");
    if (!(lambda > 0.0))
        throw Error(ErrorCode::BadConfig, "closed_form_steady: lambda must be > 0");
    RadialField phi(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.r[i];
        phi.values[i] = std::pow(lambda / (lambda * lambda + r * r), 0.5 * (p.d + 2));
    }
    // finish_state fixes the amplitude by collocating the EL equation at
    // r = 0 against the discrete potential, so only the shape matters here.
    RadialField shape(grid);
    const double phi0 = phi.values[0];
    for (std::size_t i = 0; i < grid.size(); ++i) shape.values[i] = phi.values[i] / phi0;
    return finish_state(shape, shape, p, grid, 0, true);
}

double hls_upper_bound(const Params& p) {
    const double beta = p.d - 2.0;
    const double t = beta / p.d;
    const double term1 = std::pow(t / (1.0 - 1.0 / p.m1), t);
    const double term2 = std::pow(t / (1.0 - 1.0 / p.m2), t);
    return p.d / (p.d - beta) * std::pow(p.alpha_d, t) / (p.m1 * p.m2) * (term1 + term2);
}

double hls_exact_symmetric(int d) {
    if (d < 3) throw Error(ErrorCode::DimensionTooSmall, "need d >= 3");
    const double beta = d - 2.0;
    return std::pow(M_PI, beta / 2.0) * std::tgamma((d - beta) / 2.0) /
           std::tgamma(d - beta / 2.0) *
           std::pow(std::tgamma(d / 2.0) / std::tgamma(double(d)), -1.0 + beta / d);
}

SharpConstant estimate_sharp_constant(const Params& p, const RadialGrid& grid,
                                      std::uint64_t seed, double tol, int max_iter) {
    const std::size_t n = grid.size();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.2, 1.0);
    std::uniform_real_distribution<double> width(0.05, 0.3);
    auto random_bump = [&](RadialField& f) {
        for (int k = 0; k < 3; ++k) {
            const double a = amp(rng), s = width(rng) * grid.r_max;
            for (std::size_t i = 0; i < n; ++i)
                f.values[i] += a * std::exp(-grid.r[i] * grid.r[i] / (2.0 * s * s));
        }
    };
    RadialField u(grid), v(grid);
    random_bump(u);
    random_bump(v);

    SharpConstant out;
    double j_prev = -1.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        const RadialField C = newtonian_potential(v);
        const double h = kernels::dot3(u.values.data(), C.values.data(),
                                       grid.weights.data(), n) / p.c_d;
        const double nu = std::pow(
            kernels::sum_pow(u.values.data(), p.m1, grid.weights.data(), n), 1.0 / p.m1);
        const double nv = std::pow(
            kernels::sum_pow(v.values.data(), p.m2, grid.weights.data(), n), 1.0 / p.m2);
        const double j = h / (nu * nv);
        if (!std::isfinite(j))
            throw Error(ErrorCode::Divergence, "sharp-constant ascent went non-finite");
        if (it > 10 && std::abs(j - j_prev) <= tol * std::max(1.0, j)) {
            out.cstar = j;
            break;
        }
        j_prev = j;
        shape_update(C, p.m1, 1.0, u);
        shape_update(newtonian_potential(u), p.m2, 1.0, v);
    }
    if (it >= max_iter)
        throw Error(ErrorCode::NoConvergence, "estimate_sharp_constant: max_iter exceeded");
    out.iterations = it;
    out.upper_bound = hls_upper_bound(p);
    if (p.symmetric_case()) out.exact_symmetric = hls_exact_symmetric(p.d);
    out.extremal = finish_state(u, v, p, grid, it, true);
    if (out.cstar == 0.0) out.cstar = out.extremal.hls_ratio;
    return out;
}

Thresholds critical_thresholds(const SharpConstant& cs, const Params& p) {
    Thresholds t;
    t.A = p.m1 * (p.m2 - 1.0) / (p.m2 * (p.m1 - 1.0));
    const double e = 1.0 / p.m1 + 1.0 / p.m2 - 1.0;  // = 2/d on the curve
    t.x_star = std::pow(p.m1 / (p.c_d * cs.cstar * (p.m1 - 1.0)) *
                            std::pow(t.A, -1.0 / p.m2),
                        1.0 / e);
    t.y_star = t.A * t.x_star;
    return t;
}

std::string steady_to_json(const SteadyState& s, const Params& p,
                           const std::string& config_hash) {
    nlohmann::json j;
    j["params"] = {{"d", p.d}, {"m1", p.m1}, {"m2", p.m2}, {"curve_tol", p.curve_tol}};
    j["grid"] = {{"r_max", s.U.grid->r_max},
                 {"n", s.U.grid->size()},
                 {"stretch", s.U.grid->stretch}};
    j["config_hash"] = config_hash;
    j["state"] = {
        {"U", s.U.values},       {"V", s.V.values},
        {"norm_u_m1", s.norm_u_m1}, {"norm_v_m2", s.norm_v_m2},
        {"int_u_m1", s.int_u_m1},   {"int_v_m2", s.int_v_m2},
        {"mass1", s.mass1},         {"mass2", s.mass2},
        {"free_energy", s.free_energy}, {"hls_ratio", s.hls_ratio},
        {"pohozaev", s.pohozaev},   {"el_residual", s.el_residual},
        {"offset1", s.offset1},     {"offset2", s.offset2},
        {"iterations", s.iterations}, {"converged", s.converged},
    };
    return j.dump(2);
}

SteadyState steady_from_json(const std::string& text, Params& p_out, RadialGrid& grid_out) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadConfig, std::string("steady_from_json: ") + e.what());
    }
    try {
        const auto& jp = j.at("params");
        p_out = validate_params(jp.at("d").get<int>(), jp.at("m1").get<double>(),
                                jp.at("m2").get<double>(),
                                jp.value("curve_tol", 1e-12));
        const auto& jg = j.at("grid");
        grid_out = make_grid(p_out, jg.at("r_max").get<double>(),
                             jg.at("n").get<std::size_t>(), jg.value("stretch", 1.0));
        const auto& js = j.at("state");
        SteadyState s;
        s.U = RadialField(grid_out, FieldKind::Density);
        s.V = RadialField(grid_out, FieldKind::Density);
        s.U.values = js.at("U").get<std::vector<double>>();
        s.V.values = js.at("V").get<std::vector<double>>();
        if (s.U.values.size() != grid_out.size() || s.V.values.size() != grid_out.size())
            throw Error(ErrorCode::BadConfig, "steady_from_json: field size mismatch");
        s.norm_u_m1 = js.at("norm_u_m1").get<double>();
        s.norm_v_m2 = js.at("norm_v_m2").get<double>();
        s.int_u_m1 = js.at("int_u_m1").get<double>();
        s.int_v_m2 = js.at("int_v_m2").get<double>();
        s.mass1 = js.at("mass1").get<double>();
        s.mass2 = js.at("mass2").get<double>();
        s.free_energy = js.at("free_energy").get<double>();
        s.hls_ratio = js.at("hls_ratio").get<double>();
        s.pohozaev = js.at("pohozaev").get<double>();
        s.el_residual = js.at("el_residual").get<double>();
        s.offset1 = js.at("offset1").get<double>();
        s.offset2 = js.at("offset2").get<double>();
        s.iterations = js.at("iterations").get<int>();
        s.converged = js.at("converged").get<bool>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadConfig, std::string("steady_from_json: ") + e.what());
    }
}

}  // namespace critchemo
