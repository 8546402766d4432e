#include "critchemo/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace critchemo {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadConfig, "bad numeric value for " + key + ": '" + v + "'");
    }
}

long long to_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadConfig, "bad integer value for " + key + ": '" + v + "'");
    }
}

std::vector<double> to_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(item, key));
    }
    if (out.empty()) throw Error(ErrorCode::BadConfig, "empty list for " + key);
    return out;
}

}  // namespace

Config parse_config(const std::string& text) {
    Config cfg;
    cfg.source_text = text;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw Error(ErrorCode::BadConfig,
                            "line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "params" && section != "grid" && section != "steady" &&
                section != "hls" && section != "dynamics" && section != "sweep")
                throw Error(ErrorCode::BadConfig, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::BadConfig,
                        "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (section == "params") {
            if (key == "d") cfg.d = int(to_int(val, qual));
            else if (key == "m1") cfg.m1 = to_double(val, qual);
            else if (key == "m2") cfg.m2 = to_double(val, qual);
            else if (key == "curve_tol") cfg.curve_tol = to_double(val, qual);
            else throw Error(ErrorCode::BadConfig, "unknown key " + qual);
        } else if (section == "grid") {
            if (key == "r_max") cfg.r_max = to_double(val, qual);
            else if (key == "n") cfg.n = std::size_t(to_int(val, qual));
            else if (key == "stretch") cfg.stretch = to_double(val, qual);
            else throw Error(ErrorCode::BadConfig, "unknown key " + qual);
        } else if (section == "steady") {
            if (key == "normalization") cfg.steady_normalization = to_double(val, qual);
            else if (key == "damping") cfg.steady_damping = to_double(val, qual);
            else if (key == "tol") cfg.steady_tol = to_double(val, qual);
            else if (key == "max_iter") cfg.steady_max_iter = int(to_int(val, qual));
            else throw Error(ErrorCode::BadConfig, "unknown key " + qual);
        } else if (section == "hls") {
            if (key == "seed") cfg.hls_seed = std::uint64_t(to_int(val, qual));
            else if (key == "tol") cfg.hls_tol = to_double(val, qual);
            else if (key == "max_iter") cfg.hls_max_iter = int(to_int(val, qual));
            else throw Error(ErrorCode::BadConfig, "unknown key " + qual);
        } else if (section == "dynamics") {
            if (key == "mu") cfg.mu = to_double(val, qual);
            else if (key == "taper_radius_frac") cfg.taper_radius_frac = to_double(val, qual);
            else if (key == "taper_width_frac") cfg.taper_width_frac = to_double(val, qual);
            else if (key == "eps") cfg.run.eps = to_double(val, qual);
            else if (key == "safety") cfg.run.safety = to_double(val, qual);
            else if (key == "t_end_factor") cfg.run.t_end_factor = to_double(val, qual);
            else if (key == "linf_cap_factor") cfg.run.linf_cap_factor = to_double(val, qual);
            else if (key == "dt_min_factor") cfg.run.dt_min_factor = to_double(val, qual);
            else if (key == "samples") cfg.run.samples = int(to_int(val, qual));
            else if (key == "linf_ratio_bound") cfg.run.linf_ratio_bound = to_double(val, qual);
            else if (key == "gate_tol") cfg.run.gate_tol = to_double(val, qual);
            else if (key == "max_steps") cfg.run.max_steps = to_int(val, qual);
            else throw Error(ErrorCode::BadConfig, "unknown key " + qual);
        } else if (section == "sweep") {
            if (key == "mu") cfg.sweep_mu = to_list(val, qual);
            else if (key == "jobs") cfg.jobs = int(to_int(val, qual));
            else throw Error(ErrorCode::BadConfig, "unknown key " + qual);
        } else {
            throw Error(ErrorCode::BadConfig,
                        "line " + std::to_string(lineno) + ": key outside any section");
        }
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::BadConfig, "cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string config_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace critchemo
