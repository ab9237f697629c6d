#pragma once

#include <utility>
#include <vector>

#include "meanlab/grid_fn.hpp"

namespace meanlab {

// Conjugate of a grid function sampled on a uniform slope grid.  Restricted
// suprema over a finite sample set are always finite, hence plain doubles.
struct DualGridFn {
    double lo, hi;
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
    double spacing() const { return (hi - lo) / (size() - 1); }
    double s(int k) const { return lo + k * spacing(); }

    GridFn to_grid_fn() const;
};

// Slope range of f's finite samples, each end padded by 10% of the range
// width.  Degenerate cases (a single finite sample, or all slopes equal)
// fall back to a unit-wide window so the dual grid is always usable.
std::pair<double, double> default_dual_bounds(const GridFn& f);

// Discrete Legendre-Fenchel transform
//
//     f*(s) = max_j { s x_j - f(x_j) :  f(x_j) finite }
//
// on m uniform slope samples over [dual_lo, dual_hi].  Computed by the
// monotone-slope walk along the lower convex hull of the samples, which is
// linear in n + m; slope ties keep the leftmost supporting point, matching a
// first-wins scan over the full sample set.
DualGridFn conjugate_grid(const GridFn& f, double dual_lo, double dual_hi, int m);

// Same transform with default_dual_bounds(f) and m = f.size().
DualGridFn conjugate_grid(const GridFn& f);

// Conjugate of the conjugate restricted to f's own grid: the convex lower
// envelope of the finite samples, +inf outside their hull.  The envelope is
// iterated to a bitwise fixed point, so applying the function twice returns
// the first result exactly, and the result never exceeds f anywhere.
GridFn biconjugate_grid(const GridFn& f);

} // namespace meanlab
