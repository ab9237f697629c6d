#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace meanlab {

// Parameters of a verification campaign.  The defaults span three orders of
// magnitude in each scalar argument and keep every weight strictly inside
// (0, 1) except where a check handles endpoints itself.
struct SweepConfig {
    std::vector<double> lambda_grid;
    std::vector<double> ab_grid;
    std::vector<double> p_grid;
    std::vector<int> spd_dims;
    int ensemble_size = 200;
    std::uint64_t seed = 42;
    int nodes = 64;
    double tol = 1e-12;      // scalar and grid-tier checks
    double op_tol = 1e-8;    // Loewner checks and exact matrix arithmetic
    double func_tol = 1e-6;  // quadrature-backed functional checks

    static SweepConfig defaults();

    // Throws Error on empty grids, out-of-range weights, nonpositive
    // scalars/dims/nodes or nonpositive tolerances.
    void validate() const;

    // Resolved key=value pairs, echoed into every report.
    std::vector<std::pair<std::string, std::string>> echo() const;

    // Applies one config entry; throws Error for unknown keys or unparsable
    // values (the caller wraps that into ConfigParse with a line number).
    void apply(const std::string& key, const std::string& value);
};

} // namespace meanlab
