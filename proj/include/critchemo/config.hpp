// config.hpp -- flat key=value run configuration with sectioned keys.
#ifndef CRITCHEMO_CONFIG_HPP
#define CRITCHEMO_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "critchemo/experiments.hpp"

namespace critchemo {

/// All tunables of a run. Sections: [params] [grid] [steady] [hls]
/// [dynamics] [sweep]. Unknown sections or keys raise BadConfig.
struct Config {
    // [params]
    int d = 3;
    double m1 = 1.2;
    double m2 = 1.2;
    double curve_tol = 1e-12;
    // [grid]
    double r_max = 60.0;
    std::size_t n = 2048;
    double stretch = 1.0;
    // [steady]
    double steady_normalization = 1.0;
    double steady_damping = 1.0;
    double steady_tol = 1e-10;
    int steady_max_iter = 60000;
    // [hls]
    std::uint64_t hls_seed = 1;
    double hls_tol = 1e-12;
    int hls_max_iter = 20000;
    // [dynamics]
    double mu = 1.0;
    double taper_radius_frac = 0.6;
    double taper_width_frac = 0.05;
    RunConfig run;
    // [sweep]
    std::vector<double> sweep_mu = {0.80, 0.90, 0.95, 1.00, 1.05, 1.10, 1.20};
    int jobs = 1;

    std::string source_text;  // raw text the config was parsed from
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

/// FNV-1a 64-bit hash of the raw config text, as fixed-width hex.
std::string config_hash(const std::string& text);

}  // namespace critchemo

#endif
