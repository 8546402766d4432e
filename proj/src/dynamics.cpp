#include "critchemo/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "critchemo/functionals.hpp"
#include "critchemo/kernels.hpp"
#include "critchemo/potential.hpp"

namespace critchemo {

const char* event_name(EventTag tag) {
    switch (tag) {
        case EventTag::HorizonReached: return "HorizonReached";
        case EventTag::LinfCap: return "LinfCap";
        case EventTag::DtCollapse: return "DtCollapse";
        case EventTag::NonFinite: return "NonFinite";
        case EventTag::EnergyViolation: return "EnergyViolation";
        case EventTag::GridTooSmall: return "GridTooSmall";
        case EventTag::MaxSteps: return "MaxSteps";
    }
    return "Unknown";
}

bool SimTrace::has_event(EventTag tag) const {
    for (const Event& e : events)
        if (e.tag == tag) return true;
    return false;
}

SimState make_state(const Params& p, const RadialField& u0, const RadialField& v0,
                    double eps) {
    if (u0.grid == nullptr || u0.grid != v0.grid)
        throw Error(ErrorCode::BadGrid, "make_state: fields must share one grid");
    u0.check("initial u");
    v0.check("initial v");
    if (eps < 0.0) throw Error(ErrorCode::BadConfig, "make_state: eps must be >= 0");
    SimState s;
    s.params = p;
    s.u = u0;
    s.v = v0;
    s.eps = eps;
    const RadialGrid& g = *u0.grid;
    s.edge_area.resize(g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        s.edge_area[i] = p.surface_d * std::pow(g.edges[i], p.d - 1);
    const std::size_t n = g.size();
    s.inv_dr.resize(n, 0.0);
    s.inv_weight.resize(n);
    s.dx_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < n; ++i) {
        const double dr = g.r[i] - g.r[i - 1];
        s.inv_dr[i] = 1.0 / dr;
        s.dx_min = std::min(s.dx_min, dr);
    }
    for (std::size_t i = 0; i < n; ++i) s.inv_weight[i] = 1.0 / g.weights[i];
    s.pot_c = RadialField(g, FieldKind::Potential);
    s.pot_z = RadialField(g, FieldKind::Potential);
    s.pm.resize(n);
    s.rhs_u.resize(n);
    s.rhs_v.resize(n);
    s.umax = u0.max_abs();
    s.vmax = v0.max_abs();
    return s;
}

namespace {

// du_i/dt += (A_{i+1} G_{i+1} - A_i G_i) / w_i with
// G = d/dr(f^m) - f_up * d/dr(pot) at interior edges, zero at r=0 and the wall.
// Returns the largest edge advection speed for the CFL bound.
double species_rhs(const RadialField& f, const RadialField& pot, double m,
                   const SimState& s, std::vector<double>& scratch_pm,
                   std::vector<double>& rhs) {
    const std::size_t n = f.size();
    kernels::pow_array(f.values.data(), m, scratch_pm.data(), n);
    double vmax = 0.0;
    double g_prev = 0.0;  // flux through edge 0 (symmetry)
    double a_prev = s.edge_area[0];
    for (std::size_t i = 1; i <= n; ++i) {
        double flux = 0.0;
        if (i < n) {
            const double idr = s.inv_dr[i];
            const double vel = (pot.values[i] - pot.values[i - 1]) * idr;
            const double f_up = vel < 0.0 ? f.values[i] : f.values[i - 1];
            flux = (scratch_pm[i] - scratch_pm[i - 1]) * idr - f_up * vel;
            vmax = std::max(vmax, std::abs(vel));
        }
        rhs[i - 1] = (s.edge_area[i] * flux - a_prev * g_prev) * s.inv_weight[i - 1];
        g_prev = flux;
        a_prev = s.edge_area[i];
    }
    return vmax;
}

}  // namespace

double step(SimState& s, double safety) {
    const RadialGrid& g = *s.u.grid;
    const std::size_t n = g.size();
    const Params& p = s.params;

    if (s.eps > 0.0) {
        s.pot_c = regularized_potential(s.v, s.eps);
        s.pot_z = regularized_potential(s.u, s.eps);
    } else {
        newtonian_potential_pair(s.u, s.v, s.pot_z, s.pot_c);
    }

    const double vmax_u = species_rhs(s.u, s.pot_c, p.m1, s, s.pm, s.rhs_u);
    const double vmax_v = species_rhs(s.v, s.pot_z, p.m2, s, s.pm, s.rhs_v);

    const double dx_min = s.dx_min;
    const double umax = s.umax, vmax = s.vmax;
    const double diff = std::max(p.m1 * std::pow(umax, p.m1 - 1.0),
                                 p.m2 * std::pow(vmax, p.m2 - 1.0));
    double dt = dx_min * dx_min / (2.0 * p.d * std::max(diff, 1e-300));
    const double vel = std::max(vmax_u, vmax_v);
    if (vel > 0.0) dt = std::min(dt, dx_min / vel);
    dt *= safety;

    double umax_new = 0.0, vmax_new = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double un = s.u.values[i] + dt * s.rhs_u[i];
        const double vn = s.v.values[i] + dt * s.rhs_v[i];
        assert(un > -1e-12 * umax && vn > -1e-12 * vmax);
        s.u.values[i] = un;
        s.v.values[i] = vn;
        umax_new = std::max(umax_new, un);
        vmax_new = std::max(vmax_new, vn);
    }
    s.umax = umax_new;
    s.vmax = vmax_new;
    s.t += dt;
    s.dt = dt;
    ++s.step_count;
    return dt;
}

namespace {

TraceRow make_row(const SimState& s, const Params& p) {
    const EnergyReport rep = energy_report(s.u, s.v, p);
    TraceRow row;
    row.t = s.t;
    row.mass1 = rep.mass1;
    row.mass2 = rep.mass2;
    row.norm_u_m1 = rep.norm_u_m1;
    row.norm_v_m2 = rep.norm_v_m2;
    row.linf_u = s.u.max_abs();
    row.linf_v = s.v.max_abs();
    row.free_energy = rep.free_energy;
    row.second_moment = rep.second_moment;
    row.dt = s.dt;
    return row;
}

double enclosed_fraction(const RadialField& f, double inner_fraction) {
    const RadialGrid& g = *f.grid;
    const double cut = inner_fraction * g.r_max;
    double inner = 0.0, total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double m = f.values[i] * g.weights[i];
        total += m;
        if (g.r[i] <= cut) inner += m;
    }
    return total > 0.0 ? inner / total : 1.0;
}

}  // namespace

SimTrace evolve(SimState& s, double t_end, const EvolveControls& ctl) {
    if (!(t_end > s.t)) throw Error(ErrorCode::BadConfig, "evolve: t_end must exceed t");
    SimTrace trace;
    const double sample_every = ctl.sample_every > 0.0 ? ctl.sample_every
                                                       : (t_end - s.t) / 50.0;
    auto sample = [&](const SimState& st) {
        trace.rows.push_back(make_row(st, st.params));
        if (ctl.keep_states)
            trace.states.push_back({st.t, st.u.values, st.v.values});
    };
    sample(s);
    double f_prev = trace.rows.front().free_energy;
    const double energy_tol = ctl.energy_tol > 0.0
                                  ? ctl.energy_tol
                                  : 1e-8 * std::max(1.0, std::abs(f_prev));
    bool grid_flagged = false;
    double next_sample = s.t + sample_every;

    EventTag terminal = EventTag::MaxSteps;
    for (long long k = 0; k < ctl.max_steps; ++k) {
        const double dt = step(s, ctl.safety);
        if (!s.u.finite() || !s.v.finite()) {
            terminal = EventTag::NonFinite;
            break;
        }
        if (ctl.dt_min > 0.0 && dt < ctl.dt_min) {
            terminal = EventTag::DtCollapse;
            break;
        }
        if (std::max(s.umax, s.vmax) > ctl.linf_cap) {
            terminal = EventTag::LinfCap;
            break;
        }
        const bool done = s.t >= t_end;
        if (s.t >= next_sample || done) {
            sample(s);
            while (next_sample <= s.t) next_sample += sample_every;
            const double f_now = trace.rows.back().free_energy;
            if (f_now > f_prev + energy_tol)
                trace.events.push_back({EventTag::EnergyViolation, s.t});
            f_prev = f_now;
            if (!grid_flagged &&
                std::min(enclosed_fraction(s.u, ctl.inner_fraction),
                         enclosed_fraction(s.v, ctl.inner_fraction)) < ctl.mass_fraction_min) {
                trace.events.push_back({EventTag::GridTooSmall, s.t});
                grid_flagged = true;
            }
        }
        if (done) {
            terminal = EventTag::HorizonReached;
            break;
        }
    }
    // Always close the trace with the final state.
    if (trace.rows.empty() || trace.rows.back().t < s.t) sample(s);
    trace.terminal = terminal;
    trace.t_final = s.t;
    trace.events.push_back({terminal, s.t});
    return trace;
}

double moment_rate_check(const SimTrace& trace, const Params& p, const RadialGrid& grid) {
    if (trace.states.size() < 3)
        throw Error(ErrorCode::TooFewSamples,
                    "moment_rate_check needs >= 3 retained state samples");
    const std::size_t k = trace.states.size();
    std::vector<double> m2(k), rate(k), scale_terms(k);
    const double a1 = 2.0 * p.d - 2.0 * (p.d - 2.0) / (p.m1 - 1.0);
    const double a2 = 2.0 * p.d - 2.0 * (p.d - 2.0) / (p.m2 - 1.0);
    for (std::size_t i = 0; i < k; ++i) {
        RadialField u(grid), v(grid);
        u.values = trace.states[i].u;
        v.values = trace.states[i].v;
        const EnergyReport rep = energy_report(u, v, p);
        m2[i] = rep.second_moment;
        rate[i] = a1 * rep.int_u_m1 + a2 * rep.int_v_m2 +
                  2.0 * (p.d - 2.0) * rep.free_energy;
        scale_terms[i] = std::abs(a1) * rep.int_u_m1 + std::abs(a2) * rep.int_v_m2 +
                         2.0 * (p.d - 2.0) * std::abs(rep.free_energy);
    }
    const double scale =
        std::max(*std::max_element(scale_terms.begin(), scale_terms.end()), 1e-300);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < k; ++i) {
        const double span = trace.states[i + 1].t - trace.states[i - 1].t;
        if (!(span > 0.0)) continue;
        const double fd = (m2[i + 1] - m2[i - 1]) / span;
        worst = std::max(worst, std::abs(fd - rate[i]) / scale);
    }
    return worst;
}

std::string trace_to_csv(const SimTrace& trace, const Params& p, const RadialGrid& grid,
                         const std::string& config_hash) {
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
    out += "t,M1,M2,norm_u_m1,norm_v_m2,linf_u,linf_v,F,m2,dt\n";
    for (const TraceRow& r : trace.rows) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.t, r.mass1, r.mass2, r.norm_u_m1, r.norm_v_m2, r.linf_u, r.linf_v,
                      r.free_energy, r.second_moment, r.dt);
        out += buf;
    }
    for (const Event& e : trace.events) {
        std::snprintf(buf, sizeof buf, "# event,%s,%.17g\n", event_name(e.tag), e.t);
        out += buf;
    }
    return out;
}

}  // namespace critchemo
