#pragma once

#include <string>
#include <utility>
#include <vector>

namespace meanlab {

// Parameters identifying one check evaluation.  Unset fields stay at their
// sentinels and are omitted from serialised output.
struct CaseParams {
    double lambda, p, a, b, t;
    int dim;
    long long seed;

    CaseParams();
    CaseParams& with_lambda(double v) { lambda = v; return *this; }
    CaseParams& with_p(double v) { p = v; return *this; }
    CaseParams& with_ab(double a_, double b_) { a = a_; b = b_; return *this; }
    CaseParams& with_t(double v) { t = v; return *this; }
    CaseParams& with_dim(int v) { dim = v; return *this; }
    CaseParams& with_seed(long long v) { seed = v; return *this; }
};

struct CheckResult {
    std::string check_id;
    CaseParams params;
    double residual; // pass iff residual <= tol for this check
    double tol;
    bool pass;
    std::string witness; // plain-text evidence for failures (matrix rows etc.)
};

// Outcome of one verification campaign.  Checks are recorded one by one; the
// report keeps every violation plus, per check id, the worst case seen.
//
// Serialisation: JSON splits into {"header": {"elapsed_s": ...}, "body": ...}
// so that repeated runs with the same config produce byte-identical bodies;
// text is an aligned human summary; CSV is one flat row per violation (or,
// when clean, per check id at its worst case).
class Report {
  public:
    Report(std::string suite, std::vector<std::pair<std::string, std::string>> config_echo);

    void record(const std::string& check_id, const CaseParams& params, double residual,
                double tol, const std::string& witness = "");
    void set_elapsed(double seconds) { elapsed_s_ = seconds; }
    void set_note(const std::string& note) { note_ = note; }

    const std::string& suite() const { return suite_; }
    long cases_run() const { return cases_run_; }
    double worst_residual() const { return worst_residual_; }
    const std::vector<CheckResult>& violations() const { return violations_; }
    const std::vector<CheckResult>& worst_by_check() const { return worst_; }
    bool clean() const { return violations_.empty(); }

    std::string to_json() const;
    std::string to_text() const;
    std::string to_csv(bool with_header = true) const;

  private:
    std::string suite_;
    std::vector<std::pair<std::string, std::string>> config_;
    std::string note_;
    long cases_run_ = 0;
    double worst_residual_;
    double elapsed_s_ = 0.0;
    std::vector<CheckResult> violations_;
    std::vector<CheckResult> worst_; // one entry per check id, sorted by id
};

} // namespace meanlab
