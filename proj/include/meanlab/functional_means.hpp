#pragma once

#include <vector>

#include "meanlab/conjugate.hpp"
#include "meanlab/grid_fn.hpp"
#include "meanlab/quad_form.hpp"
#include "meanlab/quadrature.hpp"
#include "meanlab/scalar_means.hpp"

namespace meanlab {

// Means of pairs of convex functions, in two representations.
//
//   * QuadPair: positive-definite quadratic forms.  Conjugation and the
//     arithmetic/harmonic means have exact matrix counterparts; the
//     quadrature-based means are returned as values at probe points.
//   * GridPair: functions sampled on one uniform grid.  Duality is the
//     discrete Legendre transform over a shared slope grid; results come
//     back restricted to the primal grid.
//
// Weight endpoints short-circuit to copies of the arguments before any
// arithmetic or quadrature: the t = 0 mean is the first argument and the
// t = 1 mean is the second.

// -------------------- quadratic-form pairs --------------------

struct QuadPair {
    QuadForm f, g;

    QuadPair(QuadForm f_, QuadForm g_);
    int dim() const { return f.dim(); }
};

// Points at which functional values are compared.
using ProbeSet = std::vector<std::vector<double>>;

// (1-t) f + t g.
QuadForm arith_fn(const QuadPair& p, const Weight& t);

// ((1-t) f* + t g*)*.
QuadForm harm_fn(const QuadPair& p, const Weight& t);

// Values at the probes of the quadrature mean
//
//   int_0^1 H_t(f,g) d(beta_w)(t)
//
// where beta_w is the normalised singular measure the rule was built for.
// The rule's weight must match w exactly; endpoints skip the rule entirely.
std::vector<double> geom_fn(const QuadPair& p, const Weight& w,
                            const JacobiRule& rule, const ProbeSet& probes);

// (1-w) * geometric(1/2) + w * arithmetic(1/2); rule_half feeds the
// geometric half.
std::vector<double> heron_fn(const QuadPair& p, const Weight& w,
                             const JacobiRule& rule_half, const ProbeSet& probes);

// (geometric(w) + geometric(1-w)) / 2, needing both rules.
std::vector<double> heinz_fn(const QuadPair& p, const Weight& w,
                             const JacobiRule& rule, const JacobiRule& rule_swap,
                             const ProbeSet& probes);

// (H_w + H_{1-w}) / 2: exact, no quadrature involved.
std::vector<double> theta_fn(const QuadPair& p, const Weight& w, const ProbeSet& probes);

// (1-mu) * harmonic(1/2) + mu * arithmetic(1/2).
std::vector<double> ell_fn(const QuadPair& p, const Weight& mu, const ProbeSet& probes);

// int_0^1 (A_t - H_t) / (t(1-t)) dt by an n-node Gauss-Legendre rule.
std::vector<double> j_fn(const QuadPair& p, int nodes, const ProbeSet& probes);
double j_fn(const QuadPair& p, int nodes, const std::vector<double>& probe);

// Largest relative residual |L - R| / (1 + |L| + |R|) over the probes for
// each integral identity, with the left side evaluated through the exact
// matrix route and the right side through n-node quadrature.
struct IdentityResiduals {
    double agm_gap = 0.0;      // weighted arithmetic-geometric gap
    double agm_gap_half = 0.0; // symmetric special case of the same gap
    double heinz_gap = 0.0;    // arithmetic-Heinz gap, two-rule kernel
    double entropy_rep = 0.0;  // entropy gap as an integral of arithmetic-Theta gaps
    double worst() const;
};

IdentityResiduals identity_residuals(const QuadPair& p, const Weight& w,
                                     const ProbeSet& probes, int nodes);

// -------------------- sampled pairs --------------------

struct GridPair {
    GridFn f, g;

    // Both functions must live on the same grid and must be finite together
    // at one point at least.
    GridPair(GridFn f_, GridFn g_);
};

// Controls the shared slope grid the transform-based means conjugate onto.
struct DualSpec {
    int size = 0;            // 0: match the primal grid size
    bool auto_bounds = true; // false: use [lo, hi] below
    double lo = 0.0, hi = 0.0;
};

// (1-t) f + t g pointwise in extended-real arithmetic.
GridFn arith_fn(const GridPair& p, const Weight& t);

// ((1-t) f* + t g*)* through the shared dual grid, restricted back to the
// primal grid.  Finite-valued for interior t.
GridFn harm_fn(const GridPair& p, const Weight& t, const DualSpec& spec = {});

GridFn geom_fn(const GridPair& p, const Weight& w, const JacobiRule& rule,
               const DualSpec& spec = {});

GridFn heron_fn(const GridPair& p, const Weight& w, const JacobiRule& rule_half,
                const DualSpec& spec = {});

GridFn heinz_fn(const GridPair& p, const Weight& w, const JacobiRule& rule,
                const JacobiRule& rule_swap, const DualSpec& spec = {});

GridFn theta_fn(const GridPair& p, const Weight& w, const DualSpec& spec = {});

GridFn ell_fn(const GridPair& p, const Weight& mu, const DualSpec& spec = {});

// +inf wherever either argument is +inf; finite on the shared domain.
GridFn j_fn(const GridPair& p, int nodes, const DualSpec& spec = {});

} // namespace meanlab
