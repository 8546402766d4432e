// experiments.hpp -- initial-data families, run classification against the
// critical-mass hypothesis, and parameter sweeps.
#ifndef CRITCHEMO_EXPERIMENTS_HPP
#define CRITCHEMO_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "critchemo/core.hpp"
#include "critchemo/dynamics.hpp"
#include "critchemo/stationary.hpp"

namespace critchemo {

struct InitialDataSpec {
    enum class Base { TaperedSteady, Gaussian, BallIndicator };
    Base base = Base::TaperedSteady;
    double mu = 1.0;                // amplitude multiplier
    double taper_radius_frac = 0.6; // taper turns on at this fraction of r_max
    double taper_width_frac = 0.05; // Gaussian falloff width / r_max
    double width = 1.0;             // Gaussian std dev / ball radius
    double amplitude = 1.0;         // base amplitude for Gaussian / ball
};

/// Builds (u0, v0); TaperedSteady scales the steady pair by mu and applies a
/// smooth compact-support taper so the data sit strictly inside the grid.
std::pair<RadialField, RadialField> make_initial(const InitialDataSpec& spec,
                                                 const SteadyState& steady,
                                                 const RadialGrid& grid);

struct RunConfig {
    double t_end_factor = 20.0;   // horizon in units of the diffusive time
    double safety = 0.4;
    double linf_cap_factor = 1e3; // cap = factor * initial sup norm
    double dt_min_factor = 1e-12; // floor = factor * initial stable step
    int samples = 50;
    double linf_ratio_bound = 1.5;
    double gate_tol = 1e-3;       // strictness margin for the norm gates
    double eps = 0.0;
    long long max_steps = 200'000'000;
    bool keep_states = false;
};

enum class Label { GlobalExistence, BlowUp, Undecided };

const char* label_name(Label label);

struct Verdict {
    Label label = Label::Undecided;
    EventTag terminal = EventTag::HorizonReached;
    double t_final = 0.0;
    double t_end = 0.0;
    double max_linf_ratio = 0.0;  // sup-norm growth over the initial data
    double m2_slope = 0.0;        // fitted slope over the last trace samples
    double norm_u0 = 0.0, norm_v0 = 0.0;  // initial-data norms
    double max_norm_u_ratio = 0.0, max_norm_v_ratio = 0.0;  // vs steady norms
    double min_norm_u_ratio = 0.0, min_norm_v_ratio = 0.0;
    double F0 = 0.0, F_steady = 0.0;
    int energy_violations = 0;
    SimTrace trace;
};

/// Runs the dynamics for one initial-data spec and classifies the outcome.
/// A verdict other than Undecided requires the norm inequalities of the
/// critical-mass hypothesis to hold strictly (beyond gate_tol) along the run.
Verdict classify(const InitialDataSpec& spec, const SteadyState& steady,
                 const Params& p, const RunConfig& cfg);

struct SweepRow {
    double mu = 0.0;
    double norm_u_m1 = 0.0, norm_v_m2 = 0.0;  // of the initial data
    double F0 = 0.0, F_steady = 0.0;
    Label verdict = Label::Undecided;
    EventTag terminal_event = EventTag::HorizonReached;
    double t_final = 0.0;
};

/// Classifies one tapered-steady run per amplitude; runs are distributed
/// over `jobs` worker threads, results ordered by input order regardless.
std::vector<SweepRow> sweep(const std::vector<double>& mus, const SteadyState& steady,
                            const Params& p, const RunConfig& cfg, int jobs = 1);

std::string sweep_to_csv(const std::vector<SweepRow>& rows, const Params& p,
                         const RadialGrid& grid, const std::string& config_hash);

}  // namespace critchemo

#endif
