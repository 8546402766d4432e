#include "critchemo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>
#include <utility>

#include "critchemo/functionals.hpp"
#include "critchemo/potential.hpp"

namespace critchemo {

const char* label_name(Label label) {
    switch (label) {
        case Label::GlobalExistence: return "GlobalExistence";
        case Label::BlowUp: return "BlowUp";
        case Label::Undecided: return "Undecided";
    }
    return "Unknown";
}

namespace {

double taper(double r, double r_on, double w) {
    if (r <= r_on) return 1.0;
    const double q = (r - r_on) / w;
    return std::exp(-0.5 * q * q);
}

double half_mass_radius(const RadialField& f) {
    const RadialGrid& g = *f.grid;
    const double half = 0.5 * integrate(f);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        acc += f.values[i] * g.weights[i];
        if (acc >= half) return g.r[i];
    }
    return g.r_max;
}

}  // namespace

std::pair<RadialField, RadialField> make_initial(const InitialDataSpec& spec,
                                                 const SteadyState& steady,
                                                 const RadialGrid& grid) {
    if (!(spec.mu > 0.0)) throw Error(ErrorCode::BadConfig, "make_initial: mu must be > 0");
    RadialField u(grid), v(grid);
    switch (spec.base) {
        case InitialDataSpec::Base::TaperedSteady: {
            if (steady.U.grid != &grid)
                throw Error(ErrorCode::BadGrid, "make_initial: steady state on another grid");
            const double r_on = spec.taper_radius_frac * grid.r_max;
            const double w = spec.taper_width_frac * grid.r_max;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double chi = taper(grid.r[i], r_on, w);
                u.values[i] = spec.mu * chi * steady.U.values[i];
                v.values[i] = spec.mu * chi * steady.V.values[i];
            }
            break;
        }
        case InitialDataSpec::Base::Gaussian: {
            const double s2 = 2.0 * spec.width * spec.width;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double val = spec.mu * spec.amplitude *
                                   std::exp(-grid.r[i] * grid.r[i] / s2);
                u.values[i] = val;
                v.values[i] = val;
            }
            break;
        }
        case InitialDataSpec::Base::BallIndicator: {
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double val = grid.r[i] <= spec.width ? spec.mu * spec.amplitude : 0.0;
                u.values[i] = val;
                v.values[i] = val;
            }
            break;
        }
    }
    return {std::move(u), std::move(v)};
}

Verdict classify(const InitialDataSpec& spec, const SteadyState& steady, const Params& p,
                 const RunConfig& cfg) {
    const RadialGrid& grid = *steady.U.grid;
    auto [u0, v0] = make_initial(spec, steady, grid);

    Verdict out;
    out.F_steady = steady.free_energy;
    const double linf0 = std::max(u0.max_abs(), v0.max_abs());
    if (!(linf0 > 0.0)) throw Error(ErrorCode::BadConfig, "classify: zero initial data");

    // Diffusive time of the initial data sets the horizon; the stable-step
    // estimate at t=0 anchors the (normally unreachable) dt floor.
    const double r_char = half_mass_radius(u0);
    const double t_diff = r_char * r_char /
                          (p.m1 * std::pow(u0.max_abs(), p.m1 - 1.0));
    out.t_end = cfg.t_end_factor * t_diff;

    double dx_min = grid.r[1] - grid.r[0];
    for (std::size_t i = 2; i < grid.size(); ++i)
        dx_min = std::min(dx_min, grid.r[i] - grid.r[i - 1]);
    const double diff0 = std::max(p.m1 * std::pow(u0.max_abs(), p.m1 - 1.0),
                                  p.m2 * std::pow(v0.max_abs(), p.m2 - 1.0));
    const double dt0 = cfg.safety * dx_min * dx_min / (2.0 * p.d * diff0);

    EvolveControls ctl;
    ctl.safety = cfg.safety;
    ctl.linf_cap = cfg.linf_cap_factor * linf0;
    ctl.dt_min = cfg.dt_min_factor * dt0;
    ctl.sample_every = out.t_end / cfg.samples;
    ctl.max_steps = cfg.max_steps;
    ctl.keep_states = cfg.keep_states;

    SimState s = make_state(p, u0, v0, cfg.eps);
    out.trace = evolve(s, out.t_end, ctl);
    out.terminal = out.trace.terminal;
    out.t_final = out.trace.t_final;

    const auto& rows = out.trace.rows;
    out.norm_u0 = rows.front().norm_u_m1;
    out.norm_v0 = rows.front().norm_v_m2;
    out.F0 = rows.front().free_energy;
    double max_linf = 0.0;
    double max_nu = 0.0, min_nu = 1e300, max_nv = 0.0, min_nv = 1e300;
    for (const TraceRow& r : rows) {
        max_linf = std::max(max_linf, std::max(r.linf_u, r.linf_v));
        max_nu = std::max(max_nu, r.norm_u_m1 / steady.norm_u_m1);
        min_nu = std::min(min_nu, r.norm_u_m1 / steady.norm_u_m1);
        max_nv = std::max(max_nv, r.norm_v_m2 / steady.norm_v_m2);
        min_nv = std::min(min_nv, r.norm_v_m2 / steady.norm_v_m2);
    }
    out.max_linf_ratio = max_linf / linf0;
    out.max_norm_u_ratio = max_nu;
    out.min_norm_u_ratio = min_nu;
    out.max_norm_v_ratio = max_nv;
    out.min_norm_v_ratio = min_nv;
    for (const Event& e : out.trace.events)
        if (e.tag == EventTag::EnergyViolation) ++out.energy_violations;

    // Least-squares slope of the second moment over the trailing samples.
    const std::size_t tail = std::min<std::size_t>(10, rows.size());
    double st = 0.0, sm = 0.0, stt = 0.0, stm = 0.0;
    for (std::size_t i = rows.size() - tail; i < rows.size(); ++i) {
        st += rows[i].t;
        sm += rows[i].second_moment;
        stt += rows[i].t * rows[i].t;
        stm += rows[i].t * rows[i].second_moment;
    }
    const double det = tail * stt - st * st;
    out.m2_slope = det > 0.0 ? (tail * stm - st * sm) / det : 0.0;

    // Verdicts demand the hypothesis' strict norm inequalities along the
    // whole run; data inside the gate_tol band stay Undecided.
    const double lo = 1.0 - cfg.gate_tol, hi = 1.0 + cfg.gate_tol;
    const bool below = max_nu < lo && max_nv < lo;
    const bool above = min_nu > hi && min_nv > hi;
    if (out.terminal == EventTag::HorizonReached && below &&
        out.max_linf_ratio <= cfg.linf_ratio_bound && out.energy_violations == 0) {
        out.label = Label::GlobalExistence;
    } else if ((out.terminal == EventTag::LinfCap || out.terminal == EventTag::DtCollapse) &&
               above && out.m2_slope < 0.0) {
        out.label = Label::BlowUp;
    } else {
        out.label = Label::Undecided;
    }
    return out;
}

std::vector<SweepRow> sweep(const std::vector<double>& mus, const SteadyState& steady,
                            const Params& p, const RunConfig& cfg, int jobs) {
    if (mus.empty()) throw Error(ErrorCode::BadConfig, "sweep: empty amplitude list");
    jobs = std::clamp(jobs, 1, int(mus.size()));
    std::vector<SweepRow> rows(mus.size());
    std::vector<std::exception_ptr> errors(jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&](int w) {
        try {
            for (std::size_t i = next.fetch_add(1); i < mus.size(); i = next.fetch_add(1)) {
                InitialDataSpec spec;
                spec.mu = mus[i];
                const Verdict v = classify(spec, steady, p, cfg);
                rows[i] = {mus[i], v.norm_u0, v.norm_v0, v.F0, v.F_steady,
                           v.label, v.terminal, v.t_final};
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, const Params& p,
                         const RadialGrid& grid, const std::string& config_hash) {
    std::string out;
    char buf[512];
    std::snprintf(buf, sizeof buf, "# critchemo %s\n# config_hash %s\n", kVersion,
                  config_hash.c_str());
    out += buf;
    std::snprintf(buf, sizeof buf, "# params d=%d m1=%.17g m2=%.17g\n", p.d, p.m1, p.m2);
    out += buf;
    std::snprintf(buf, sizeof buf, "# grid r_max=%.17g n=%zu stretch=%.17g\n", grid.r_max,
                  grid.size(), grid.stretch);
    out += buf;
    out += "mu,norm_u_m1,norm_v_m2,F0,F_steady,verdict,terminal_event,t_final\n";
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%s,%s,%.17g\n",
                      r.mu, r.norm_u_m1, r.norm_v_m2, r.F0, r.F_steady,
                      label_name(r.verdict), event_name(r.terminal_event), r.t_final);
        out += buf;
    }
    return out;
}

}  // namespace critchemo
