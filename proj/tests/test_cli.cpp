#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "critchemo/config.hpp"

using namespace critchemo;

namespace {

std::string bin() {
    const char* b = std::getenv("CRITCHEMO_BIN");
    REQUIRE(b != nullptr);
    return b;
}

int run(const std::string& args) {
    const std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(bool(f));
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

const std::string small_cfg = R"(
[grid]
r_max = 30
n = 128
[steady]
tol = 1e-9
[dynamics]
t_end_factor = 2
[sweep]
mu = 0.9, 1.1
)";

}  // namespace

TEST_CASE("config parsing: defaults, sections, and strictness") {
    const Config cfg = parse_config(small_cfg);
    CHECK(cfg.r_max == 30.0);
    CHECK(cfg.n == 128);
    CHECK(cfg.d == 3);  // default
    CHECK(cfg.sweep_mu == std::vector<double>{0.9, 1.1});
    CHECK(cfg.run.t_end_factor == 2.0);

    CHECK_THROWS_AS(parse_config("[grid]\nrmax = 30\n"), Error);       // typo key
    CHECK_THROWS_AS(parse_config("[gird]\n"), Error);                  // typo section
    CHECK_THROWS_AS(parse_config("n = 128\n"), Error);                 // no section
    CHECK_THROWS_AS(parse_config("[grid]\nn = twelve\n"), Error);      // bad value
    CHECK_THROWS_AS(parse_config("[grid]\nn 128\n"), Error);           // no equals
    CHECK_NOTHROW(parse_config("# comment only\n\n"));
}

TEST_CASE("config hash is stable and content-sensitive") {
    const std::string h1 = config_hash(small_cfg);
    CHECK(h1.size() == 16);
    CHECK(config_hash(small_cfg) == h1);
    CHECK(config_hash(small_cfg + " ") != h1);
}

TEST_CASE("cli: validate prints constants and rejects bad parameters") {
    CHECK(run("validate --d 3 --m1 1.2 --m2 1.2") == 0);
    CHECK(run("validate --d 3 --m1 1.2 --m2 1.3") == 1);  // off-curve
    CHECK(run("validate --d 2 --m1 1.2 --m2 1.2") == 1);
    CHECK(run("bogus-subcommand") != 0);
}

TEST_CASE("cli: steady writes json; evolve consumes it") {
    write("/tmp/cc_test.cfg", small_cfg);
    CHECK(run("steady --config /tmp/cc_test.cfg --out /tmp/cc_steady.json") == 0);
    const std::string js = slurp("/tmp/cc_steady.json");
    CHECK(js.find("\"el_residual\"") != std::string::npos);

    Params p;
    RadialGrid g;
    const SteadyState s = steady_from_json(js, p, g);
    CHECK(s.converged);
    CHECK(g.size() == 128);

    CHECK(run("evolve --config /tmp/cc_test.cfg --steady /tmp/cc_steady.json"
              " --out /tmp/cc_trace.csv --plot-out /tmp/cc_plot.csv") == 0);
    const std::string csv = slurp("/tmp/cc_trace.csv");
    CHECK(csv.find("t,M1,M2,") != std::string::npos);
    CHECK(csv.find("# event,") != std::string::npos);
    const std::string plot = slurp("/tmp/cc_plot.csv");
    CHECK(plot.size() < csv.size());
}

TEST_CASE("cli: solver failure maps to exit 2") {
    write("/tmp/cc_noconv.cfg", "[grid]\nn = 64\nr_max = 30\n[steady]\ntol = 1e-18\nmax_iter = 3\n");
    CHECK(run("steady --config /tmp/cc_noconv.cfg --out /tmp/cc_x.json") == 2);
}

TEST_CASE("cli: config errors map to exit 1") {
    write("/tmp/cc_bad.cfg", "[grid]\nbogus = 1\n");
    CHECK(run("steady --config /tmp/cc_bad.cfg --out /tmp/cc_x.json") == 1);
}

TEST_CASE("cli: repeated sweep runs are byte-identical") {
    write("/tmp/cc_test.cfg", small_cfg);
    CHECK(run("sweep --config /tmp/cc_test.cfg --out /tmp/cc_sweep1.csv") == 0);
    CHECK(run("sweep --config /tmp/cc_test.cfg --out /tmp/cc_sweep2.csv") == 0);
    const std::string a = slurp("/tmp/cc_sweep1.csv");
    CHECK(a == slurp("/tmp/cc_sweep2.csv"));
    CHECK(a.find("verdict") != std::string::npos);
    // the config hash in the header matches the file content hash
    CHECK(a.find(config_hash(small_cfg)) != std::string::npos);
}

TEST_CASE("cli: sweep --mu range syntax and --jobs") {
    write("/tmp/cc_test.cfg", small_cfg);
    CHECK(run("sweep --config /tmp/cc_test.cfg --mu 0.9:1.1:2 --jobs 2"
              " --out /tmp/cc_sweep3.csv") == 0);
    const std::string csv = slurp("/tmp/cc_sweep3.csv");
    CHECK(csv.find("\n0.9") != std::string::npos);
    CHECK(csv.find("\n1.1") != std::string::npos);
}
