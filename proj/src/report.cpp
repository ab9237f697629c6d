#include "meanlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace meanlab {

namespace {

constexpr double unset = std::numeric_limits<double>::quiet_NaN();

bool set(double v) { return !std::isnan(v); }

// Shortest decimal string that round-trips; keeps reports readable and
// byte-stable across runs.
std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string params_to_string(const CaseParams& c) {
    std::ostringstream os;
    const char* sep = "";
    auto put = [&](const char* name, const std::string& v) {
        os << sep << name << "=" << v;
        sep = " ";
    };
    if (set(c.lambda)) put("lambda", fmt(c.lambda));
    if (set(c.p)) put("p", fmt(c.p));
    if (set(c.a)) put("a", fmt(c.a));
    if (set(c.b)) put("b", fmt(c.b));
    if (set(c.t)) put("t", fmt(c.t));
    if (c.dim >= 0) put("dim", std::to_string(c.dim));
    if (c.seed >= 0) put("seed", std::to_string(c.seed));
    return os.str();
}

nlohmann::json params_to_json(const CaseParams& c) {
    nlohmann::json j = nlohmann::json::object();
    if (set(c.lambda)) j["lambda"] = c.lambda;
    if (set(c.p)) j["p"] = c.p;
    if (set(c.a)) j["a"] = c.a;
    if (set(c.b)) j["b"] = c.b;
    if (set(c.t)) j["t"] = c.t;
    if (c.dim >= 0) j["dim"] = c.dim;
    if (c.seed >= 0) j["seed"] = c.seed;
    return j;
}

// Sort key covering every parameter; NaN sorts first through the bit trick
// of comparing the "is set" flag before the value.
auto case_key(const CheckResult& r) {
    auto d = [](double v) { return std::make_pair(set(v), set(v) ? v : 0.0); };
    return std::make_tuple(r.check_id, r.params.dim, r.params.seed, d(r.params.lambda),
                           d(r.params.p), d(r.params.a), d(r.params.b), d(r.params.t));
}

std::vector<CheckResult> sorted_cases(const std::vector<CheckResult>& v) {
    std::vector<CheckResult> out = v;
    std::stable_sort(out.begin(), out.end(),
                     [](const CheckResult& x, const CheckResult& y) {
                         return case_key(x) < case_key(y);
                     });
    return out;
}

} // namespace

CaseParams::CaseParams()
    : lambda(unset), p(unset), a(unset), b(unset), t(unset), dim(-1), seed(-1) {}

Report::Report(std::string suite, std::vector<std::pair<std::string, std::string>> config_echo)
    : suite_(std::move(suite)), config_(std::move(config_echo)),
      worst_residual_(-std::numeric_limits<double>::infinity()) {}

void Report::record(const std::string& check_id, const CaseParams& params, double residual,
                    double tol, const std::string& witness) {
    ++cases_run_;
    worst_residual_ = std::max(worst_residual_, residual);

    CheckResult r{check_id, params, residual, tol, residual <= tol, witness};
    if (!r.pass) violations_.push_back(r);

    auto it = std::lower_bound(worst_.begin(), worst_.end(), check_id,
                               [](const CheckResult& w, const std::string& id) {
                                   return w.check_id < id;
                               });
    if (it == worst_.end() || it->check_id != check_id)
        worst_.insert(it, r);
    else if (residual > it->residual)
        *it = r;
}

std::string Report::to_json() const {
    nlohmann::json body;
    body["suite"] = suite_;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& kv : config_) cfg[kv.first] = kv.second;
    body["config"] = cfg;
    body["cases_run"] = cases_run_;
    body["worst_residual"] = cases_run_ > 0 ? worst_residual_ : 0.0;
    nlohmann::json viol = nlohmann::json::array();
    for (const CheckResult& r : sorted_cases(violations_)) {
        nlohmann::json v;
        v["check_id"] = r.check_id;
        v["params"] = params_to_json(r.params);
        v["residual"] = r.residual;
        v["tol"] = r.tol;
        if (!r.witness.empty()) v["witness"] = r.witness;
        viol.push_back(v);
    }
    body["violations"] = viol;
    if (!note_.empty()) body["note"] = note_;

    nlohmann::json root;
    root["header"] = {{"elapsed_s", elapsed_s_}};
    root["body"] = body;
    return root.dump();
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "suite: " << suite_ << "\n";
    os << "config:";
    for (const auto& kv : config_) os << " " << kv.first << "=" << kv.second;
    os << "\n";
    os << "cases run: " << cases_run_ << "\n";
    os << "worst residual: " << (cases_run_ > 0 ? fmt(worst_residual_) : "0") << "\n";

    size_t width = 8;
    for (const CheckResult& r : worst_) width = std::max(width, r.check_id.size());
    os << "checks (worst case per check):\n";
    for (const CheckResult& r : worst_) {
        os << "  " << r.check_id << std::string(width - r.check_id.size() + 2, ' ')
           << (r.pass ? "ok  " : "FAIL") << "  residual=" << fmt(r.residual)
           << "  tol=" << fmt(r.tol);
        const std::string ps = params_to_string(r.params);
        if (!ps.empty()) os << "  at " << ps;
        os << "\n";
    }

    if (violations_.empty()) {
        os << "violations: none\n";
    } else {
        os << "violations: " << violations_.size() << "\n";
        for (const CheckResult& r : sorted_cases(violations_)) {
            os << "  " << r.check_id << "  residual=" << fmt(r.residual)
               << "  tol=" << fmt(r.tol);
            const std::string ps = params_to_string(r.params);
            if (!ps.empty()) os << "  at " << ps;
            os << "\n";
            if (!r.witness.empty()) {
                std::istringstream ws(r.witness);
                std::string line;
                while (std::getline(ws, line)) os << "    | " << line << "\n";
            }
        }
    }
    if (!note_.empty()) os << "note: " << note_ << "\n";
    os << "elapsed: " << fmt(elapsed_s_) << " s\n";
    return os.str();
}

std::string Report::to_csv(bool with_header) const {
    std::ostringstream os;
    if (with_header) os << "check_id,lambda,p,a,b,dim,seed,residual,pass\n";
    auto cell = [&](double v) { return set(v) ? fmt(v) : std::string(); };
    auto row = [&](const CheckResult& r) {
        const CaseParams& c = r.params;
        // The a column doubles as the scalar argument t for checks that are
        // parameterised by t alone.
        const bool t_as_a = !set(c.a) && set(c.t);
        os << r.check_id << "," << cell(c.lambda) << "," << cell(c.p) << ","
           << (t_as_a ? fmt(c.t) : cell(c.a)) << "," << cell(c.b) << ","
           << (c.dim >= 0 ? std::to_string(c.dim) : "") << ","
           << (c.seed >= 0 ? std::to_string(c.seed) : "") << "," << fmt(r.residual) << ","
           << (r.pass ? "1" : "0") << "\n";
    };
    if (violations_.empty())
        for (const CheckResult& r : worst_) row(r);
    else
        for (const CheckResult& r : sorted_cases(violations_)) row(r);
    return os.str();
}

} // namespace meanlab
