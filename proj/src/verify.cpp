#include "critchemo/verify.hpp"

#include <cmath>

#include "critchemo/functionals.hpp"
#include "critchemo/potential.hpp"
#include "critchemo/stationary.hpp"

namespace critchemo {

namespace {

void check(std::vector<CheckResult>& out, const std::string& name, double value,
           double bound) {
    out.push_back({name, std::isfinite(value) && value <= bound, value, bound});
}

double rel_l2_diff(const RadialField& a, const RadialField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double w = a.grid->weights[i];
        const double d = a.values[i] - b.values[i];
        num += d * d * w;
        den += b.values[i] * b.values[i] * w;
    }
    return std::sqrt(num / den);
}

}  // namespace

std::vector<CheckResult> run_identity_suite(const Config& cfg) {
    std::vector<CheckResult> out;

    // Curve algebra: the norm-preserving scaling exponents collapse to the
    // diffusion exponents exactly on the critical curve.
    {
        double worst = 0.0;
        const int d = cfg.d;
        // keep both exponents inside the admissible range (1, 2 - 2/d)
        const double lo = d * (2.0 * d - 2.0) / (d * d + 2.0 * d - 4.0) + 1e-3;
        const double hi = 2.0 - 2.0 / d - 1e-3;
        for (int k = 0; k < 20; ++k) {
            const double m1 = lo + (hi - lo) * k / 19.0;
            const Params q = validate_params(d, m1, curve_m2(d, m1));
            worst = std::max(worst, std::abs(q.p1() - q.m1));
            worst = std::max(worst, std::abs(q.p2() - q.m2));
        }
        check(out, "curve_scaling_exponents", worst, 1e-12);
    }

    const Params p = validate_params(cfg.d, cfg.m1, cfg.m2, cfg.curve_tol);
    const RadialGrid grid = make_grid(p, cfg.r_max, cfg.n, cfg.stretch);
    const SteadyState S =
        solve_steady(p, grid, cfg.steady_normalization, cfg.steady_damping,
                     cfg.steady_tol, cfg.steady_max_iter);

    // Stationary identity suite.
    check(out, "steady_el_residual", S.el_residual, 1e-6);
    check(out, "steady_pohozaev", S.pohozaev, 1e-3);
    {
        const double w1 = p.m1 / (p.m1 - 1.0) * S.int_u_m1;
        const double w2 = p.m2 / (p.m2 - 1.0) * S.int_v_m2;
        check(out, "steady_weighted_norms", std::abs(w1 - w2) / std::max(w1, w2), 1e-3);
        const double pred = (p.m1 + p.m2 - p.m1 * p.m2) / ((p.m1 - 1.0) * p.m2) * S.int_u_m1;
        check(out, "steady_energy_identity",
              std::abs(S.free_energy - pred) / std::max(std::abs(S.free_energy), std::abs(pred)),
              1e-3);
        // mean chemical-potential offsets vs the central potential level
        const double pot_scale = p.m1 / (p.m1 - 1.0) * std::pow(S.U.values[0], p.m1 - 1.0);
        check(out, "steady_offset_1", std::abs(S.offset1) / pot_scale, 1e-2);
        check(out, "steady_offset_2", std::abs(S.offset2) / pot_scale, 1e-2);
    }

    // Cross-solver agreement against the closed form, gauge-aligned by
    // matching central amplitudes through the scaling family.
    if (p.symmetric_case()) {
        const SteadyState C = closed_form_steady(p, grid, 1.0);
        const double lam = std::pow(S.U.values[0] / C.U.values[0], p.m1 / p.d);
        auto [ur, vr] = rescale(C.U, C.V, lam, p);
        check(out, "cross_solver_l2",
              std::max(rel_l2_diff(ur, S.U), rel_l2_diff(vr, S.V)), 1e-2);
    }

    // Sharp constant and thresholds.
    {
        const SharpConstant cs =
            estimate_sharp_constant(p, grid, cfg.hls_seed, cfg.hls_tol, cfg.hls_max_iter);
        if (cs.exact_symmetric)
            check(out, "sharp_constant_vs_gamma_formula",
                  std::abs(cs.cstar - *cs.exact_symmetric) / *cs.exact_symmetric, 1e-2);
        check(out, "sharp_constant_upper_bound", cs.cstar, cs.upper_bound);

        const Thresholds th = critical_thresholds(cs, p);
        check(out, "threshold_norm_u",
              std::abs(std::pow(th.x_star, 1.0 / p.m1) - S.norm_u_m1) / S.norm_u_m1, 2e-2);
        check(out, "threshold_norm_v",
              std::abs(std::pow(th.y_star, 1.0 / p.m2) - S.norm_v_m2) / S.norm_v_m2, 2e-2);
    }

    // Asymmetric pair: the estimated constant must respect the general bound.
    {
        const Params pa = validate_params(3, 1.25, curve_m2(3, 1.25));
        const RadialGrid ga = make_grid(pa, cfg.r_max, std::min<std::size_t>(cfg.n, 1024));
        const SharpConstant ca = estimate_sharp_constant(pa, ga, cfg.hls_seed, 1e-10, 40000);
        check(out, "asymmetric_upper_bound", ca.cstar, ca.upper_bound);
    }

    // Scaling invariance of the free energy and critical norms.
    for (const double lam : {0.5, 2.0}) {
        auto [ul, vl] = rescale(S.U, S.V, lam, p);
        const EnergyReport r0 = energy_report(S.U, S.V, p);
        const EnergyReport rl = energy_report(ul, vl, p);
        const std::string tag = lam < 1.0 ? "lam_0.5" : "lam_2";
        check(out, "scaling_energy_" + tag,
              std::abs(rl.free_energy - r0.free_energy) / std::abs(r0.free_energy), 1e-3);
        check(out, "scaling_norm_" + tag,
              std::max(std::abs(rl.norm_u_m1 - r0.norm_u_m1) / r0.norm_u_m1,
                       std::abs(rl.norm_v_m2 - r0.norm_v_m2) / r0.norm_v_m2),
              2e-2);
    }

    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace critchemo
