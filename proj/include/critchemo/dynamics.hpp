// dynamics.hpp -- conservative finite-volume evolution of the coupled
// degenerate-diffusion/chemotaxis system on a radial grid.
#ifndef CRITCHEMO_DYNAMICS_HPP
#define CRITCHEMO_DYNAMICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "critchemo/core.hpp"

namespace critchemo {

enum class EventTag {
    HorizonReached,   // integrated to t_end
    LinfCap,          // sup norm exceeded the configured cap (blow-up proxy)
    DtCollapse,       // stable step size fell below dt_min
    NonFinite,        // a field went NaN/inf
    EnergyViolation,  // free energy increased beyond per-step tolerance
    GridTooSmall,     // mass left the inner 80% of the domain
    MaxSteps,         // step budget exhausted before any other event
};

const char* event_name(EventTag tag);

struct SimState {
    Params params;
    RadialField u, v;
    double t = 0.0;
    double dt = 0.0;          // last stable step actually taken
    long long step_count = 0;
    double eps = 0.0;         // > 0 selects the regularized interaction kernel
    // cached per-grid quantities for the inner loop
    std::vector<double> edge_area;   // surface_d * edges^{d-1}
    std::vector<double> inv_dr;      // 1/(r_i - r_{i-1}) per interior edge
    std::vector<double> inv_weight;  // 1/cell volume
    double dx_min = 0.0;
    // step scratch, reused across steps to avoid per-step allocation
    RadialField pot_c, pot_z;
    std::vector<double> pm, rhs_u, rhs_v;
    double umax = 0.0, vmax = 0.0;  // sup norms, maintained by step
};

SimState make_state(const Params& p, const RadialField& u0, const RadialField& v0,
                    double eps = 0.0);

struct TraceRow {
    double t = 0.0;
    double mass1 = 0.0, mass2 = 0.0;
    double norm_u_m1 = 0.0, norm_v_m2 = 0.0;
    double linf_u = 0.0, linf_v = 0.0;
    double free_energy = 0.0;
    double second_moment = 0.0;
    double dt = 0.0;
};

struct Event {
    EventTag tag;
    double t = 0.0;
};

struct StateSample {
    double t = 0.0;
    std::vector<double> u, v;
};

struct SimTrace {
    std::vector<TraceRow> rows;
    std::vector<Event> events;
    std::vector<StateSample> states;  // only if EvolveControls::keep_states
    EventTag terminal = EventTag::HorizonReached;
    double t_final = 0.0;

    bool has_event(EventTag tag) const;
};

struct EvolveControls {
    double safety = 0.4;          // CFL safety factor
    double linf_cap = 1e300;      // absolute sup-norm cap
    double dt_min = 0.0;          // absolute floor for the stable step
    double sample_every = 0.0;    // trace sampling interval; 0 = t_end / 50
    long long max_steps = 200'000'000;
    double energy_tol = 0.0;      // per-step allowed F increase; 0 = auto
    double inner_fraction = 0.8;  // enclosed-mass check radius fraction
    double mass_fraction_min = 0.999;
    bool keep_states = false;     // retain sampled (u, v) for moment checks
};

/// Advance one forward-Euler step with upwind advective fluxes and return
/// the dt actually used; dt = safety * min(diffusive, advective CFL bounds).
double step(SimState& s, double safety);

/// Integrate to t_end or until a terminal event fires. The trace rows are
/// sampled at multiples of sample_every plus the initial and final states.
SimTrace evolve(SimState& s, double t_end, const EvolveControls& ctl);

/// Max over interior samples of |finite-difference d(m2)/dt - identity rate|
/// normalized by the magnitude of the identity's individual terms.
/// Needs keep_states; throws TooFewSamples for < 3 samples.
double moment_rate_check(const SimTrace& trace, const Params& p, const RadialGrid& grid);

/// Serialize a trace as CSV with a comment header; deterministic bytes.
std::string trace_to_csv(const SimTrace& trace, const Params& p, const RadialGrid& grid,
                         const std::string& config_hash);

}  // namespace critchemo

#endif
