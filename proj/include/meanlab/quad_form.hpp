#pragma once

#include <vector>

#include "meanlab/scalar_means.hpp"
#include "meanlab/spd_matrix.hpp"

namespace meanlab {

// Quadratic functional f_A(x) = (1/2) <Ax, x> with A symmetric positive
// definite.  The class of these forms is closed under conjugation and under
// every mean in the library, which makes them the exact-arithmetic test bed.
struct QuadForm {
    SpdMatrix a;

    explicit QuadForm(SpdMatrix m) : a(std::move(m)) {}
    int dim() const { return a.dim(); }

    double value(const std::vector<double>& x) const;
};

// Fenchel conjugate: (f_A)^* = f_{A^{-1}}.
QuadForm conjugate_quad(const QuadForm& q);

// ((1-t) f^* + t g^*)^* = f_{((1-t)A^{-1} + t B^{-1})^{-1}}; the exact
// counterpart of the grid-level harmonic combination.  Weight endpoints
// return exact copies.
QuadForm harmonic_combine_quad(const QuadForm& f, const QuadForm& g, const Weight& t);

} // namespace meanlab
