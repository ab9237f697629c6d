#pragma once

#include "meanlab/scalar_means.hpp"
#include "meanlab/spd_matrix.hpp"

namespace meanlab {

enum class OpMeanKind { nabla, sharp, harm };

// Weighted arithmetic (nabla), geometric (sharp) and harmonic connections of
// two SPD matrices of the same dimension.  Weight endpoints return exact
// copies of the corresponding argument.
SpdMatrix op_mean(const SpdMatrix& a, const SpdMatrix& b, const Weight& t, OpMeanKind kind);

// (1-l) A#B + l A∇B: line from the geometric to the arithmetic mean.
SpdMatrix heron_op(const SpdMatrix& a, const SpdMatrix& b, const Weight& lam);

// (A#_l B + A#_{1-l} B) / 2.
SpdMatrix heinz_op(const SpdMatrix& a, const SpdMatrix& b, const Weight& lam);

// (1-mu) A!B + mu A∇B: line from the harmonic to the arithmetic mean.
SpdMatrix ell_op(const SpdMatrix& a, const SpdMatrix& b, const Weight& mu);

// Relative operator entropy A^(1/2) log(A^(-1/2) B A^(-1/2)) A^(1/2).
SymMatrix rel_entropy(const SpdMatrix& a, const SpdMatrix& b);

// Closed-form entropy-gap operator (B - A) A^(-1) S(A|B), symmetrised.
SymMatrix j_closed(const SpdMatrix& a, const SpdMatrix& b);

// The same operator through its integral representation
//   int_0^1 (A∇_t B - A!_t B) / (t(1-t)) dt
// with an n-node Gauss-Legendre rule (all nodes interior).
SymMatrix j_quadrature(const SpdMatrix& a, const SpdMatrix& b, int n);

// Loewner order test T <= S up to tol * (1 + ||S - T||_2).  On failure the
// witness carries the offending eigenvalue and its eigenvector.  `residual`
// is -min_eigenvalue / (1 + ||S - T||_2), so `holds` iff residual <= tol.
struct LoewnerWitness {
    bool holds;
    double min_eigenvalue;
    double residual;
    std::vector<double> eigenvector;
};
LoewnerWitness loewner_leq(const SymMatrix& t, const SymMatrix& s, double tol = 1e-8);

} // namespace meanlab
