#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "meanlab/grid_fn.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("meanlab_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path scratch_file(const std::string& name) {
    static int counter = 0;
    return scratch_dir() / (std::to_string(counter++) + "_" + name);
}

RunResult run_cli(const std::string& args) {
    const fs::path out = scratch_file("stdout.txt");
    const fs::path err = scratch_file("stderr.txt");
    const std::string cmd = std::string("\"") + MEANLAB_CLI_PATH + "\" " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

// Drops every header object so that timing does not defeat byte comparison.
std::string strip_headers(std::string s) {
    const std::string key = "\"header\":{";
    for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos)) {
        const auto close = s.find('}', pos);
        REQUIRE(close != std::string::npos);
        s.erase(pos, close - pos + 1);
    }
    return s;
}

const std::string kSmallSweep =
    "--lambda_grid 0.3,0.5 --ab_grid 0.5,2 --p_grid 0,0.5 --spd_dims 2 "
    "--ensemble_size 3 --nodes 32 --seed 42";

} // namespace

TEST_CASE("eval prints the scalar mean value") {
    const RunResult heinz = run_cli("eval heinz --a 1 --b 16 --lambda 0.25");
    CHECK(heinz.code == 0);
    CHECK(heinz.out == "5\n");
    const RunResult geo = run_cli("eval geometric --a 1 --b 4 --lambda 0.5");
    CHECK(geo.code == 0);
    CHECK(geo.out == "2\n");
}

TEST_CASE("eval rejects an out-of-range weight with a usage error") {
    const RunResult r = run_cli("eval heinz --a 1 --b 16 --lambda 1.5");
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("missing or unknown subcommands are usage errors") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("eval heinz --a 1 --b 16").code == 2); // missing required flag
}

TEST_CASE("verify scalar reports a clean run as text") {
    const RunResult r = run_cli("verify scalar --format text " + kSmallSweep);
    CHECK(r.code == 0);
    CHECK(r.out.find("suite: scalar") != std::string::npos);
    CHECK(r.out.find("violations: none") != std::string::npos);
    CHECK(r.out.find("seed=42") != std::string::npos);
}

TEST_CASE("verify exits 1 when a suite records violations") {
    const RunResult r =
        run_cli("verify functional --lambda_grid 0.3 --func_tol 1e-300 --nodes 32 "
                "--format text");
    CHECK(r.code == 1);
    CHECK(r.out.find("violations: none") == std::string::npos);
}

TEST_CASE("config file values apply and flags take precedence") {
    const fs::path cfg = scratch_file("config.txt");
    {
        std::ofstream os(cfg);
        os << "# comment line\n"
           << "\n"
           << "seed = 7\n"
           << "nodes = 32\n"
           << "lambda_grid = 0.3,0.5\n"
           << "ab_grid = 0.5,2\n"
           << "p_grid = 0,0.5\n"
           << "format = text\n";
    }
    const RunResult r = run_cli("verify scalar --config " + cfg.string() + " --seed 9");
    CHECK(r.code == 0);
    CHECK(r.out.find("suite: scalar") != std::string::npos); // format from file
    CHECK(r.out.find("seed=9") != std::string::npos);        // flag beats file
    CHECK(r.out.find("nodes=32") != std::string::npos);      // file beats default
}

TEST_CASE("unknown config keys are rejected with their line number") {
    const fs::path cfg = scratch_file("bad_config.txt");
    {
        std::ofstream os(cfg);
        os << "seed = 7\n"
           << "bogus_key = 1\n";
    }
    const RunResult r = run_cli("verify scalar --config " + cfg.string());
    CHECK(r.code == 2);
    CHECK(r.err.find("config line 2") != std::string::npos);
}

TEST_CASE("counterexamples subcommand reproduces the pinned values") {
    const RunResult r = run_cli("counterexamples --format text");
    CHECK(r.code == 0);
    CHECK(r.out.find("suite: counterexamples") != std::string::npos);
    CHECK(r.out.find("violations: none") != std::string::npos);
}

TEST_CASE("search-open emits its minima in csv form") {
    const RunResult r = run_cli("search-open --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.find("check_id,lambda,p,a,b,dim,seed,residual,pass") == 0);
    CHECK(r.out.find("open_gap_grid_min") != std::string::npos);
    CHECK(r.out.find("open_gap_refined_min") != std::string::npos);
}

TEST_CASE("rule dumps nodes and weights as csv") {
    const RunResult r = run_cli("rule --lambda 0.5 --nodes 8");
    CHECK(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "node,weight");
    int rows = 0;
    double wsum = 0.0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        ++rows;
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double node = std::stod(line.substr(0, comma));
        wsum += std::stod(line.substr(comma + 1));
        CHECK(node > 0.0);
        CHECK(node < 1.0);
    }
    CHECK(rows == 8);
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(run_cli("rule --lambda 1.5").code == 2);
}

TEST_CASE("transform returns the sampled conjugate as csv") {
    const fs::path in = scratch_file("parabola.csv");
    {
        std::ofstream os(in);
        os << "x,value\n";
        const int n = 41;
        for (int i = 0; i < n; ++i) {
            const double x = -2.0 + 4.0 * i / (n - 1);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", x, 0.5 * x * x);
            os << buf;
        }
    }
    const fs::path out = scratch_file("conjugate.csv");
    const RunResult r = run_cli("transform --input " + in.string() + " --out " + out.string());
    CHECK(r.code == 0);

    std::ifstream is(out);
    const meanlab::GridFn conj = meanlab::GridFn::read_csv(is);
    CHECK(conj.size() == 41);
    // The conjugate of x^2/2 is s^2/2; the sampling error is about h^2/8.
    for (int i = 0; i < conj.size(); ++i) {
        const double s = conj.x(i);
        if (std::fabs(s) > 1.5) continue;
        CHECK(std::fabs(conj[i].value() - 0.5 * s * s) <= 0.03);
    }

    CHECK(run_cli("transform --input /nonexistent/f.csv").code == 2);
}

TEST_CASE("verification bodies are byte-identical across reruns") {
    const RunResult a = run_cli("verify all " + kSmallSweep);
    const RunResult b = run_cli("verify all " + kSmallSweep);
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(a.out.find("\"header\"") != std::string::npos);
    CHECK(strip_headers(a.out) == strip_headers(b.out));
    CHECK(strip_headers(a.out).find("\"suite\":\"operator\"") != std::string::npos);
}
