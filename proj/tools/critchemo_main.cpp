// critchemo -- batch driver for the chemotaxis laboratory.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "critchemo/config.hpp"
#include "critchemo/dynamics.hpp"
#include "critchemo/experiments.hpp"
#include "critchemo/stationary.hpp"
#include "critchemo/verify.hpp"

namespace cc = critchemo;

namespace {

int exit_code_for(const cc::Error& e) {
    switch (e.code) {
        case cc::ErrorCode::NoConvergence:
        case cc::ErrorCode::Divergence:
        case cc::ErrorCode::NonFinite:
        case cc::ErrorCode::NotConverged:
            return 2;
        default:
            return 1;
    }
}

cc::Config load_or_default(const std::string& path) {
    if (path.empty()) return cc::Config{};
    return cc::load_config(path);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw cc::Error(cc::ErrorCode::BadConfig, "cannot open output file: " + path);
    f << content;
}

// `a:b:k` -> k evenly spaced values in [a, b].
std::vector<double> parse_mu_range(const std::string& s) {
    double a = 0, b = 0;
    int k = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &a, &b, &k) != 3 || k < 1)
        throw cc::Error(cc::ErrorCode::BadConfig, "bad --mu range (want a:b:k): " + s);
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) out[i] = k == 1 ? a : a + (b - a) * i / (k - 1);
    return out;
}

cc::SteadyState obtain_steady(const cc::Config& cfg, const std::string& steady_path,
                              cc::Params& p, cc::RadialGrid& grid) {
    if (!steady_path.empty()) {
        std::ifstream f(steady_path);
        if (!f)
            throw cc::Error(cc::ErrorCode::BadConfig, "cannot open " + steady_path);
        std::stringstream ss;
        ss << f.rdbuf();
        return cc::steady_from_json(ss.str(), p, grid);
    }
    p = cc::validate_params(cfg.d, cfg.m1, cfg.m2, cfg.curve_tol);
    grid = cc::make_grid(p, cfg.r_max, cfg.n, cfg.stretch);
    return cc::solve_steady(p, grid, cfg.steady_normalization, cfg.steady_damping,
                            cfg.steady_tol, cfg.steady_max_iter);
}

int default_jobs() {
    if (const char* env = std::getenv("CRITCHEMO_JOBS")) {
        const int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"critchemo: two-species chemotaxis laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_path, steady_path, plot_path, mu_range;
    int jobs = default_jobs();
    int plot_stride = 10;

    auto* validate = app.add_subcommand("validate", "check parameters, print constants");
    int vd = 3;
    double vm1 = 1.2, vm2 = 1.2;
    validate->add_option("--config", config_path);
    validate->add_option("--d", vd);
    validate->add_option("--m1", vm1);
    validate->add_option("--m2", vm2);

    auto* steady = app.add_subcommand("steady", "solve the stationary system");
    steady->add_option("--config", config_path);
    steady->add_option("--out", out_path)->required();

    auto* hls = app.add_subcommand("hls", "estimate the sharp interaction constant");
    hls->add_option("--config", config_path);
    hls->add_option("--out", out_path);

    auto* evolve = app.add_subcommand("evolve", "run the dynamics for one amplitude");
    evolve->add_option("--config", config_path);
    evolve->add_option("--out", out_path)->required();
    evolve->add_option("--steady", steady_path);
    evolve->add_option("--plot-out", plot_path);
    evolve->add_option("--plot-stride", plot_stride);

    auto* sweep = app.add_subcommand("sweep", "classify a range of amplitudes");
    sweep->add_option("--config", config_path);
    sweep->add_option("--out", out_path)->required();
    sweep->add_option("--mu", mu_range, "a:b:k evenly spaced amplitudes");
    sweep->add_option("--steady", steady_path);
    sweep->add_option("--jobs", jobs);

    auto* verify = app.add_subcommand("verify", "run the identity suite");
    verify->add_option("--config", config_path);

    CLI11_PARSE(app, argc, argv);

    try {
        cc::Config cfg = load_or_default(config_path);
        const std::string hash = cc::config_hash(cfg.source_text);

        if (validate->parsed()) {
            cc::Params p = config_path.empty()
                               ? cc::validate_params(vd, vm1, vm2)
                               : cc::validate_params(cfg.d, cfg.m1, cfg.m2, cfg.curve_tol);
            std::printf("d          %d\nm1         %.17g\nm2         %.17g\n", p.d, p.m1,
                        p.m2);
            std::printf("alpha_d    %.17g\nc_d        %.17g\nsurface_d  %.17g\n", p.alpha_d,
                        p.c_d, p.surface_d);
            std::printf("p1         %.17g\np2         %.17g\nsymmetric  %s\n", p.p1(), p.p2(),
                        p.symmetric_case() ? "yes" : "no");
            return 0;
        }

        if (steady->parsed()) {
            cc::Params p;
            cc::RadialGrid grid;
            const cc::SteadyState s = obtain_steady(cfg, "", p, grid);
            write_file(out_path, cc::steady_to_json(s, p, hash));
            std::printf("steady: el_residual=%.3e pohozaev=%.3e iterations=%d\n",
                        s.el_residual, s.pohozaev, s.iterations);
            return 0;
        }

        if (hls->parsed()) {
            const cc::Params p = cc::validate_params(cfg.d, cfg.m1, cfg.m2, cfg.curve_tol);
            const cc::RadialGrid grid = cc::make_grid(p, cfg.r_max, cfg.n, cfg.stretch);
            const cc::SharpConstant cs =
                cc::estimate_sharp_constant(p, grid, cfg.hls_seed, cfg.hls_tol,
                                            cfg.hls_max_iter);
            const cc::Thresholds th = cc::critical_thresholds(cs, p);
            std::printf("cstar        %.12g\nupper_bound  %.12g\n", cs.cstar, cs.upper_bound);
            if (cs.exact_symmetric)
                std::printf("exact        %.12g\n", *cs.exact_symmetric);
            std::printf("x_star       %.12g\ny_star       %.12g\nA            %.12g\n",
                        th.x_star, th.y_star, th.A);
            if (!out_path.empty())
                write_file(out_path, cc::steady_to_json(cs.extremal, p, hash));
            return 0;
        }

        if (evolve->parsed()) {
            cc::Params p;
            cc::RadialGrid grid;
            const cc::SteadyState s = obtain_steady(cfg, steady_path, p, grid);
            cc::InitialDataSpec spec;
            spec.mu = cfg.mu;
            spec.taper_radius_frac = cfg.taper_radius_frac;
            spec.taper_width_frac = cfg.taper_width_frac;
            const cc::Verdict v = cc::classify(spec, s, p, cfg.run);
            write_file(out_path, cc::trace_to_csv(v.trace, p, grid, hash));
            if (!plot_path.empty()) {
                cc::SimTrace thin;
                for (std::size_t i = 0; i < v.trace.rows.size(); i += std::size_t(plot_stride))
                    thin.rows.push_back(v.trace.rows[i]);
                if (thin.rows.empty() || thin.rows.back().t != v.trace.rows.back().t)
                    thin.rows.push_back(v.trace.rows.back());
                write_file(plot_path, cc::trace_to_csv(thin, p, grid, hash));
            }
            std::printf("verdict=%s terminal=%s t_final=%.6g max_linf_ratio=%.6g\n",
                        cc::label_name(v.label), cc::event_name(v.terminal), v.t_final,
                        v.max_linf_ratio);
            return 0;
        }

        if (sweep->parsed()) {
            cc::Params p;
            cc::RadialGrid grid;
            const cc::SteadyState s = obtain_steady(cfg, steady_path, p, grid);
            const std::vector<double> mus =
                mu_range.empty() ? cfg.sweep_mu : parse_mu_range(mu_range);
            const int j = sweep->count("--jobs") ? jobs
                          : cfg.jobs > 1         ? cfg.jobs
                                                 : default_jobs();
            cc::RunConfig rc = cfg.run;
            const auto rows = cc::sweep(mus, s, p, rc, j);
            write_file(out_path, cc::sweep_to_csv(rows, p, grid, hash));
            for (const auto& r : rows)
                std::printf("mu=%.4g verdict=%s terminal=%s t_final=%.6g\n", r.mu,
                            cc::label_name(r.verdict), cc::event_name(r.terminal_event),
                            r.t_final);
            return 0;
        }

        if (verify->parsed()) {
            const auto results = cc::run_identity_suite(cfg);
            bool ok = true;
            for (const auto& r : results) {
                std::printf("%-34s %s  value=%.6e bound=%.6e\n", r.name.c_str(),
                            r.pass ? "PASS" : "FAIL", r.value, r.bound);
                ok = ok && r.pass;
            }
            return ok ? 0 : 3;
        }
    } catch (const cc::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
