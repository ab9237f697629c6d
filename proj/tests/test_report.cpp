#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>

#include "json.hpp"

#include "meanlab/report.hpp"

using namespace meanlab;

namespace {

Report sample_report() {
    Report r("scalar", {{"seed", "42"}, {"tol", "1e-12"}});
    r.record("alpha_check", CaseParams().with_lambda(0.25).with_ab(1.0, 4.0), 1e-14, 1e-12);
    r.record("alpha_check", CaseParams().with_lambda(0.75).with_ab(1.0, 4.0), 5e-13, 1e-12);
    r.record("beta_check", CaseParams().with_dim(3).with_seed(7), 2e-15, 1e-8);
    return r;
}

} // namespace

TEST_CASE("recording tracks counts, worst cases and violations") {
    Report r = sample_report();
    CHECK(r.cases_run() == 3);
    CHECK(r.clean());
    CHECK(r.worst_residual() == 5e-13);
    REQUIRE(r.worst_by_check().size() == 2);
    CHECK(r.worst_by_check()[0].check_id == "alpha_check");
    CHECK(r.worst_by_check()[0].residual == 5e-13);
    CHECK(r.worst_by_check()[1].check_id == "beta_check");

    r.record("alpha_check", CaseParams().with_lambda(0.5).with_ab(2.0, 3.0), 1e-3, 1e-12,
             "witness line");
    CHECK_FALSE(r.clean());
    REQUIRE(r.violations().size() == 1);
    CHECK(r.violations()[0].residual == 1e-3);
    CHECK_FALSE(r.violations()[0].pass);
    CHECK(r.violations()[0].witness == "witness line");
    CHECK(r.worst_residual() == 1e-3);
}

TEST_CASE("serialised violations are sorted by check id and parameters") {
    Report r("scalar", {});
    r.record("zeta", CaseParams().with_lambda(0.5), 1.0, 0.0);
    r.record("alpha", CaseParams().with_lambda(0.9), 1.0, 0.0);
    r.record("alpha", CaseParams().with_lambda(0.1), 1.0, 0.0);
    REQUIRE(r.violations().size() == 3);
    const nlohmann::json j = nlohmann::json::parse(r.to_json());
    const auto& v = j["body"]["violations"];
    REQUIRE(v.size() == 3);
    CHECK(v[0]["check_id"] == "alpha");
    CHECK(v[0]["params"]["lambda"] == 0.1);
    CHECK(v[1]["params"]["lambda"] == 0.9);
    CHECK(v[2]["check_id"] == "zeta");
}

TEST_CASE("json output carries the body under a separate header") {
    Report r = sample_report();
    r.set_elapsed(1.25);
    const nlohmann::json j = nlohmann::json::parse(r.to_json());
    CHECK(j.contains("header"));
    CHECK(j["header"].contains("elapsed_s"));
    CHECK(j["body"]["suite"] == "scalar");
    CHECK(j["body"]["cases_run"] == 3);
    CHECK(j["body"]["worst_residual"] == 5e-13);
    CHECK(j["body"]["violations"].is_array());
    CHECK(j["body"]["violations"].empty());
    CHECK(j["body"]["config"]["seed"] == "42");
}

TEST_CASE("json body is byte-stable across rebuilds, header may differ") {
    Report a = sample_report();
    Report b = sample_report();
    a.set_elapsed(0.5);
    b.set_elapsed(2.5);
    const std::string ja = a.to_json(), jb = b.to_json();
    CHECK(ja != jb);
    const auto body = [](const std::string& s) { return s.substr(0, s.rfind(",\"header\"")); };
    CHECK(body(ja) == body(jb));
    // Key order is canonical: the body precedes the header.
    CHECK(ja.find("\"body\"") < ja.find("\"header\""));
}

TEST_CASE("text output names the suite and reports a clean run") {
    Report r = sample_report();
    const std::string t = r.to_text();
    CHECK(t.find("suite: scalar") != std::string::npos);
    CHECK(t.find("violations: none") != std::string::npos);
    CHECK(t.find("alpha_check") != std::string::npos);
    CHECK(t.find("seed=42") != std::string::npos);

    Report v("scalar", {});
    v.record("alpha", CaseParams().with_lambda(0.5), 1.0, 1e-12, "row 0: 1 2");
    const std::string tv = v.to_text();
    CHECK(tv.find("FAIL") != std::string::npos);
    CHECK(tv.find("row 0: 1 2") != std::string::npos);
}

TEST_CASE("csv output follows the flat schema") {
    Report r = sample_report();
    const std::string csv = r.to_csv();
    std::istringstream is(csv);
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "check_id,lambda,p,a,b,dim,seed,residual,pass");
    int rows = 0;
    while (std::getline(is, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 2); // clean run: one row per check id at its worst case

    const std::string no_header = r.to_csv(false);
    CHECK(no_header.find("check_id,") == std::string::npos);
}

TEST_CASE("csv reuses the a column for the t parameter when a is unset") {
    Report r("scalar", {});
    r.record("crossing", CaseParams().with_lambda(0.9).with_t(1.5), 1.0, 0.0);
    const std::string csv = r.to_csv();
    std::istringstream is(csv);
    std::string header, row;
    REQUIRE(std::getline(is, header));
    REQUIRE(std::getline(is, row));
    CHECK(row.find("crossing,0.9,,1.5,,") == 0);
}

TEST_CASE("note is carried into json and text") {
    Report r("search", {});
    r.record("gap", CaseParams(), 0.0, 1e-9);
    r.set_note("numerical evidence only");
    const nlohmann::json j = nlohmann::json::parse(r.to_json());
    CHECK(j["body"]["note"] == "numerical evidence only");
    CHECK(r.to_text().find("numerical evidence only") != std::string::npos);
}
