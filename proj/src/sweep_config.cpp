#include "meanlab/sweep_config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "meanlab/errors.hpp"

namespace meanlab {

namespace {

std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt(v[i]);
    }
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

double parse_double(const std::string& s) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    double v = 0.0;
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v))
        throw Error("bad number '" + s + "'");
    return v;
}

long long parse_int(const std::string& s) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    long long v = 0;
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) throw Error("bad integer '" + s + "'");
    return v;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) out.push_back(item);
    if (out.empty()) out.push_back("");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& item : split_commas(s)) out.push_back(parse_double(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const std::string& item : split_commas(s))
        out.push_back(static_cast<int>(parse_int(item)));
    return out;
}

} // namespace

SweepConfig SweepConfig::defaults() {
    SweepConfig cfg;
    cfg.lambda_grid.push_back(0.01);
    for (int k = 1; k <= 19; ++k) cfg.lambda_grid.push_back(0.05 * k);
    cfg.lambda_grid.push_back(0.99);
    for (int k = 0; k <= 12; ++k) cfg.ab_grid.push_back(std::pow(10.0, -3.0 + 0.5 * k));
    cfg.p_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    cfg.spd_dims = {2, 3, 4, 5, 6, 7, 8};
    return cfg;
}

void SweepConfig::validate() const {
    if (lambda_grid.empty() || ab_grid.empty() || p_grid.empty() || spd_dims.empty())
        throw Error("config grids must be nonempty");
    for (double l : lambda_grid)
        if (!(l >= 0.0 && l <= 1.0)) throw Error("lambda_grid entries must lie in [0, 1]");
    for (double v : ab_grid)
        if (!(v > 0.0)) throw Error("ab_grid entries must be strictly positive");
    for (double p : p_grid)
        if (!(p >= 0.0 && p <= 1.0)) throw Error("p_grid entries must lie in [0, 1]");
    for (int d : spd_dims)
        if (d < 1 || d > 16) throw Error("spd_dims entries must lie in [1, 16]");
    if (ensemble_size < 1) throw Error("ensemble_size must be positive");
    if (nodes < 2) throw Error("nodes must be at least 2");
    if (!(tol > 0.0) || !(op_tol > 0.0) || !(func_tol > 0.0))
        throw Error("tolerances must be strictly positive");
}

std::vector<std::pair<std::string, std::string>> SweepConfig::echo() const {
    return {
        {"lambda_grid", join(lambda_grid)},
        {"ab_grid", join(ab_grid)},
        {"p_grid", join(p_grid)},
        {"spd_dims", join(spd_dims)},
        {"ensemble_size", std::to_string(ensemble_size)},
        {"seed", std::to_string(seed)},
        {"nodes", std::to_string(nodes)},
        {"tol", fmt(tol)},
        {"op_tol", fmt(op_tol)},
        {"func_tol", fmt(func_tol)},
    };
}

void SweepConfig::apply(const std::string& key, const std::string& value) {
    if (key == "lambda_grid")
        lambda_grid = parse_double_list(value);
    else if (key == "ab_grid")
        ab_grid = parse_double_list(value);
    else if (key == "p_grid")
        p_grid = parse_double_list(value);
    else if (key == "spd_dims")
        spd_dims = parse_int_list(value);
    else if (key == "ensemble_size")
        ensemble_size = static_cast<int>(parse_int(value));
    else if (key == "seed")
        seed = static_cast<std::uint64_t>(parse_int(value));
    else if (key == "nodes")
        nodes = static_cast<int>(parse_int(value));
    else if (key == "tol")
        tol = parse_double(value);
    else if (key == "op_tol")
        op_tol = parse_double(value);
    else if (key == "func_tol")
        func_tol = parse_double(value);
    else
        throw Error("unknown key '" + key + "'");
}

} // namespace meanlab
