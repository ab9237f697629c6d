#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "meanlab/suites.hpp"

using namespace meanlab;

namespace {

SweepConfig tiny() {
    SweepConfig cfg = SweepConfig::defaults();
    cfg.lambda_grid = {0.0, 0.3, 1.0};
    cfg.ab_grid = {0.5, 2.0};
    cfg.p_grid = {0.0, 1.0};
    cfg.spd_dims = {2, 3};
    cfg.ensemble_size = 5;
    cfg.nodes = 48;
    return cfg;
}

} // namespace

TEST_CASE("scalar suite is clean on a small sweep") {
    const Report r = run_scalar_suite(tiny());
    CHECK(r.suite() == "scalar");
    CHECK(r.clean());
    CHECK(r.cases_run() > 0);
    CHECK(r.worst_residual() <= 1e-12);
}

TEST_CASE("scalar suite handles an endpoint-only weight grid") {
    SweepConfig cfg = tiny();
    cfg.lambda_grid = {0.0, 1.0};
    const Report r = run_scalar_suite(cfg);
    CHECK(r.clean());
}

TEST_CASE("operator suite is clean on a small ensemble") {
    const Report r = run_operator_suite(tiny());
    CHECK(r.suite() == "operator");
    CHECK(r.clean());
    CHECK(r.cases_run() > 0);
}

TEST_CASE("functional suite is clean on a small sweep") {
    SweepConfig cfg = tiny();
    cfg.lambda_grid = {0.3, 0.5};
    const Report r = run_functional_suite(cfg);
    CHECK(r.suite() == "functional");
    CHECK(r.clean());
    CHECK(r.cases_run() > 0);
}

TEST_CASE("counterexample reproduction pins the reference values") {
    const Report r = reproduce_counterexamples();
    CHECK(r.suite() == "counterexamples");
    CHECK(r.clean());
    CHECK(r.cases_run() == 5);
}

TEST_CASE("open inequality search finds no negative value and labels itself") {
    SweepConfig cfg = tiny();
    const Report r = search_open_inequality(cfg);
    CHECK(r.clean());
    const std::string text = r.to_text();
    CHECK(text.find("note:") != std::string::npos);
    CHECK(text.find("open_gap_grid_min") != std::string::npos);
    CHECK(text.find("open_gap_refined_min") != std::string::npos);
}

TEST_CASE("an impossible tolerance turns residuals into violations") {
    SweepConfig cfg = tiny();
    cfg.lambda_grid = {0.3};
    // Identity residuals are quadrature truncation errors: small but strictly
    // positive, so they must all surface once the tolerance is absurd.
    cfg.func_tol = 1e-300;
    const Report r = run_functional_suite(cfg);
    CHECK_FALSE(r.clean());
    for (const CheckResult& v : r.violations()) CHECK(v.residual > v.tol);
}

TEST_CASE("reports echo the resolved configuration") {
    SweepConfig cfg = tiny();
    cfg.seed = 7;
    const Report r = run_scalar_suite(cfg);
    const std::string text = r.to_text();
    CHECK(text.find("seed=7") != std::string::npos);
    CHECK(text.find("nodes=48") != std::string::npos);
}
