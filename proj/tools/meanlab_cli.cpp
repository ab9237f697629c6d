#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "meanlab/conjugate.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/grid_fn.hpp"
#include "meanlab/quadrature.hpp"
#include "meanlab/report.hpp"
#include "meanlab/scalar_means.hpp"
#include "meanlab/suites.hpp"
#include "meanlab/sweep_config.hpp"

namespace {

using namespace meanlab;

std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

constexpr const char* kSweepKeys[] = {"lambda_grid", "ab_grid",  "p_grid", "spd_dims",
                                      "ensemble_size", "seed",   "nodes",  "tol",
                                      "op_tol",        "func_tol"};

// Shared output/config state.  Precedence is flags over file over defaults,
// so flag values are staged and applied after the file has been read.
struct Common {
    std::string config_path;
    std::string format = "json";
    std::string out;
    std::vector<std::pair<std::string, std::string>> flag_values;
    std::vector<CLI::Option*> flag_opts;
    CLI::Option* format_opt = nullptr;
    CLI::Option* out_opt = nullptr;
};

void add_output_flags(CLI::App* sub, Common& c) {
    c.format_opt = sub->add_option("--format", c.format, "Report format: json, text or csv")
                       ->check(CLI::IsMember({"json", "text", "csv"}));
    c.out_opt = sub->add_option("--out", c.out, "Write output to this file instead of stdout");
    sub->add_option("--config", c.config_path, "key=value file overriding sweep defaults");
}

void add_sweep_flags(CLI::App* sub, Common& c) {
    c.flag_values.resize(std::size(kSweepKeys));
    for (std::size_t i = 0; i < std::size(kSweepKeys); ++i) {
        c.flag_values[i].first = kSweepKeys[i];
        c.flag_opts.push_back(
            sub->add_option("--" + std::string(kSweepKeys[i]), c.flag_values[i].second));
    }
}

// Reads a key=value file.  Blank lines and #-comments are skipped; any key
// that is not a sweep key, "format" or "output" is rejected with its line.
void load_config(const std::string& path, SweepConfig& cfg, Common& c) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open config file '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigParse(line_no, "expected key=value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        try {
            if (key == "format") {
                if (value != "json" && value != "text" && value != "csv")
                    throw Error("format must be json, text or csv");
                if (c.format_opt->count() == 0) c.format = value;
            } else if (key == "output") {
                if (c.out_opt->count() == 0) c.out = value;
            } else {
                cfg.apply(key, value);
            }
        } catch (const Error& e) {
            throw ConfigParse(line_no, e.what());
        }
    }
}

SweepConfig resolve_config(Common& c) {
    SweepConfig cfg = SweepConfig::defaults();
    if (!c.config_path.empty()) load_config(c.config_path, cfg, c);
    for (std::size_t i = 0; i < c.flag_opts.size(); ++i)
        if (c.flag_opts[i]->count() > 0) cfg.apply(c.flag_values[i].first, c.flag_values[i].second);
    cfg.validate();
    return cfg;
}

void emit(const std::string& body, const Common& c) {
    if (c.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream os(c.out, std::ios::binary);
    if (!os) throw Error("cannot open output file '" + c.out + "'");
    os << body;
}

int emit_reports(const std::vector<Report>& reports, const Common& c) {
    std::ostringstream os;
    if (c.format == "json") {
        if (reports.size() == 1) {
            os << reports.front().to_json() << "\n";
        } else {
            os << "[";
            for (std::size_t i = 0; i < reports.size(); ++i)
                os << (i ? "," : "") << reports[i].to_json();
            os << "]\n";
        }
    } else if (c.format == "text") {
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i) os << "\n";
            os << reports[i].to_text();
        }
    } else {
        for (std::size_t i = 0; i < reports.size(); ++i) os << reports[i].to_csv(i == 0);
    }
    emit(os.str(), c);
    for (const Report& r : reports)
        if (!r.clean()) return 1;
    return 0;
}

int run_eval(const std::string& mean, double a, double b, double lambda) {
    const ScalarPair pr(a, b);
    const Weight w(lambda);
    double value = 0.0;
    if (mean == "arithmetic")
        value = weighted_mean(pr, w, MeanKind::arithmetic);
    else if (mean == "geometric")
        value = weighted_mean(pr, w, MeanKind::geometric);
    else if (mean == "harmonic")
        value = weighted_mean(pr, w, MeanKind::harmonic);
    else if (mean == "heron")
        value = heron(pr, w);
    else
        value = heinz(pr, w);
    std::cout << fmt(value) << "\n";
    return 0;
}

int run_rule(double lambda, int nodes, const Common& c) {
    const JacobiRule rule = jacobi_rule(lambda, nodes);
    std::ostringstream os;
    os << "node,weight\n";
    for (int i = 0; i < rule.size(); ++i)
        os << fmt(rule.nodes[static_cast<std::size_t>(i)]) << ","
           << fmt(rule.weights[static_cast<std::size_t>(i)]) << "\n";
    emit(os.str(), c);
    return 0;
}

int run_transform(const std::string& input, double dual_lo, double dual_hi, int dual_size,
                  bool have_lo, bool have_hi, bool have_size, const Common& c) {
    std::ifstream is(input);
    if (!is) throw Error("cannot open input file '" + input + "'");
    const GridFn f = GridFn::read_csv(is);
    auto bounds = default_dual_bounds(f);
    if (have_lo) bounds.first = dual_lo;
    if (have_hi) bounds.second = dual_hi;
    if (!(bounds.first < bounds.second)) throw Error("dual bounds must satisfy lo < hi");
    const int m = have_size ? dual_size : f.size();
    if (m < 2) throw Error("dual grid needs at least 2 samples");
    const DualGridFn conj = conjugate_grid(f, bounds.first, bounds.second, m);
    std::ostringstream os;
    conj.to_grid_fn().write_csv(os);
    emit(os.str(), c);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for scalar, matrix and functional means"};
    app.require_subcommand(1);

    Common verify_c, counter_c, search_c, rule_c, transform_c;

    CLI::App* verify = app.add_subcommand("verify", "Run an inequality suite and report");
    std::string which;
    verify->add_option("suite", which, "scalar, operator, functional or all")
        ->required()
        ->check(CLI::IsMember({"scalar", "operator", "functional", "all"}));
    add_output_flags(verify, verify_c);
    add_sweep_flags(verify, verify_c);

    CLI::App* counter = app.add_subcommand("counterexamples",
                                           "Pin the comparison-function sign crossovers");
    add_output_flags(counter, counter_c);

    CLI::App* search = app.add_subcommand(
        "search-open", "Numerically scan the conjectured nonnegative combination");
    add_output_flags(search, search_c);
    add_sweep_flags(search, search_c);

    CLI::App* eval = app.add_subcommand("eval", "Evaluate one scalar mean");
    std::string mean;
    double eval_a = 0.0, eval_b = 0.0, eval_lambda = 0.0;
    eval->add_option("mean", mean, "arithmetic, geometric, harmonic, heron or heinz")
        ->required()
        ->check(CLI::IsMember({"arithmetic", "geometric", "harmonic", "heron", "heinz"}));
    eval->add_option("--a", eval_a, "first positive value")->required();
    eval->add_option("--b", eval_b, "second positive value")->required();
    eval->add_option("--lambda", eval_lambda, "weight in [0, 1]")->required();

    CLI::App* rule = app.add_subcommand("rule", "Dump a Gauss-Jacobi rule as node,weight CSV");
    double rule_lambda = 0.5;
    int rule_nodes = 64;
    rule->add_option("--lambda", rule_lambda, "weight exponent in (0, 1)")->required();
    rule->add_option("--nodes", rule_nodes, "number of nodes");
    add_output_flags(rule, rule_c);

    CLI::App* transform = app.add_subcommand(
        "transform", "Convex conjugate of a sampled function (x,value CSV in and out)");
    std::string transform_input;
    double dual_lo = 0.0, dual_hi = 0.0;
    int dual_size = 0;
    transform->add_option("--input", transform_input, "input CSV path")->required();
    CLI::Option* lo_opt = transform->add_option("--dual-lo", dual_lo, "lower dual bound");
    CLI::Option* hi_opt = transform->add_option("--dual-hi", dual_hi, "upper dual bound");
    CLI::Option* size_opt = transform->add_option("--dual-size", dual_size, "dual sample count");
    add_output_flags(transform, transform_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) {
            const SweepConfig cfg = resolve_config(verify_c);
            std::vector<Report> reports;
            if (which == "scalar" || which == "all") reports.push_back(run_scalar_suite(cfg));
            if (which == "operator" || which == "all") reports.push_back(run_operator_suite(cfg));
            if (which == "functional" || which == "all")
                reports.push_back(run_functional_suite(cfg));
            return emit_reports(reports, verify_c);
        }
        if (counter->parsed()) {
            resolve_config(counter_c);
            return emit_reports({reproduce_counterexamples()}, counter_c);
        }
        if (search->parsed()) {
            const SweepConfig cfg = resolve_config(search_c);
            return emit_reports({search_open_inequality(cfg)}, search_c);
        }
        if (eval->parsed()) return run_eval(mean, eval_a, eval_b, eval_lambda);
        if (rule->parsed()) {
            resolve_config(rule_c);
            return run_rule(rule_lambda, rule_nodes, rule_c);
        }
        if (transform->parsed()) {
            resolve_config(transform_c);
            return run_transform(transform_input, dual_lo, dual_hi, dual_size,
                                 lo_opt->count() > 0, hi_opt->count() > 0, size_opt->count() > 0,
                                 transform_c);
        }
    } catch (const ConfigParse& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
