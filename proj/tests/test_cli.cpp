#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <ww/config.hpp>
#include <ww/report.hpp>

using namespace ww;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(WW_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("config schema") {
    // Missing required field.
    CHECK_THROWS_AS(RunConfig::from_pairs({{"grid.n", "64"}}), config_error);
    // Unknown field named in the error.
    try {
        RunConfig::from_pairs({{"time.T", "1"}, {"grid.nn", "64"}});
        CHECK(false);
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("grid.nn") != std::string::npos);
    }
    // Odd grid rejected; inf depth accepted.
    CHECK_THROWS_AS(RunConfig::from_pairs({{"time.T", "1"}, {"grid.n", "63"}}), config_error);
    RunConfig c = RunConfig::from_pairs({{"time.T", "1"}, {"physics.h", "inf"}});
    CHECK(std::isinf(c.h));
    // Defaulted fields are recorded.
    CHECK(!c.defaulted.empty());
    CHECK(c.echo.count("weight.sigma") == 1);
    // Hash changes with values.
    RunConfig c2 = RunConfig::from_pairs({{"time.T", "2"}, {"physics.h", "inf"}});
    CHECK(c.hash() != c2.hash());
}

TEST_CASE("cli exit codes and outputs") {
    // Config error -> 2.
    CHECK(run_cli("simulate --set grid.n=64") == 2);
    CHECK(run_cli("verify no-such-suite --out /tmp/ww_verify_bad") == 2);

    // Rest state run -> 0, zero series, verdict file present.
    const std::string out = "/tmp/ww_cli_rest";
    std::system(("rm -rf " + out).c_str());
    const int rc = run_cli("simulate --set time.T=0.5 --set grid.n=64 --set data.kind=rest"
                           " --set time.snap_stride=8 --out " + out);
    CHECK(rc == 0);
    const std::string verdicts = slurp(out + "/verdicts.json");
    CHECK(verdicts.find("config_hash") != std::string::npos);
    CHECK(verdicts.find("\"pass\"") != std::string::npos);
    CHECK(verdicts.find(code_version) != std::string::npos);
    const std::string snap = slurp(out + "/snapshots.csv");
    CHECK(snap.find("t,alpha,re_w,im_w,re_q,im_q") == 0);

    // Determinism: identical config + seed give bit-identical outputs.
    const std::string out2 = "/tmp/ww_cli_rest2";
    std::system(("rm -rf " + out2).c_str());
    const std::string args = "simulate --set time.T=0.3 --set grid.n=64 --set data.kind=mode"
                             " --set physics.amplitude=0.003 --set time.snap_stride=2 --seed 11";
    CHECK(run_cli(args + " --out " + out) == 0);
    CHECK(run_cli(args + " --out " + out2) == 0);
    CHECK(slurp(out + "/snapshots.csv") == slurp(out2 + "/snapshots.csv"));
    CHECK(slurp(out + "/conserved.csv") == slurp(out2 + "/conserved.csv"));
}

TEST_CASE("cli norms subcommand") {
    const std::string out = "/tmp/ww_cli_norms";
    std::system(("rm -rf " + out).c_str());
    CHECK(run_cli("norms --set time.T=1 --set grid.n=64 --set data.kind=mode --out " + out) == 0);
    CHECK(slurp(out + "/norms.json").find("E^{1/4}") != std::string::npos);
    CHECK(slurp(out + "/envelope.csv").find("lambda") == 0);
}
