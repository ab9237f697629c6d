#pragma once

#include "meanlab/report.hpp"
#include "meanlab/sweep_config.hpp"

namespace meanlab {

// Each suite sweeps its tier over the configured grids and records one case
// per (check, parameter point), with the residual normalised so that a pass
// means the claimed order or identity holds to the configured tolerance.

// Scalar two-sided bounds, interpolation inequalities, reverse bounds and
// the midpoint/endpoint sandwich for integral means.
Report run_scalar_suite(const SweepConfig& cfg);

// Matrix orders in the positive-semidefinite sense over random
// well-conditioned ensembles, including the entropy-corrected reverse bound.
Report run_operator_suite(const SweepConfig& cfg);

// Functional orders at probe points for quadratic pairs, sampled-grid
// orders for a fixed library of convex pairs, exact-vs-quadrature identity
// residuals, and agreement with the matrix tier on quadratic pairs.
Report run_functional_suite(const SweepConfig& cfg);

// Pins the sign crossovers of the comparison function on both sides of
// t = 1 against hard-coded reference values, and checks the companion
// coefficient stays nonnegative across the weight interval.
Report reproduce_counterexamples();

// Numerical minimisation of alpha + beta^2 over t > 0, lambda in [0, 1/2].
// Reports the smallest values found; evidence, not proof.
Report search_open_inequality(const SweepConfig& cfg);

} // namespace meanlab
