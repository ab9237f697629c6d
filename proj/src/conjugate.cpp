#include "meanlab/conjugate.hpp"

#include <algorithm>
#include <cmath>

namespace meanlab {

GridFn DualGridFn::to_grid_fn() const {
    std::vector<ExtReal> v;
    v.reserve(values.size());
    for (double x : values) v.push_back(ExtReal(x));
    return GridFn(lo, hi, std::move(v));
}

namespace {

struct FinitePoints {
    std::vector<double> x;
    std::vector<double> y;
};

FinitePoints finite_points(const GridFn& f) {
    FinitePoints p;
    for (int i = 0; i < f.size(); ++i) {
        if (f[i].is_finite()) {
            p.x.push_back(f.x(i));
            p.y.push_back(f[i].value());
        }
    }
    if (p.x.empty()) throw EmptyDomain();
    return p;
}

// Lower convex hull indices of (x, y), x strictly increasing.  Collinear
// middle points are dropped, so for a run of equal slopes only the leftmost
// and rightmost supporting points survive as vertices.
std::vector<int> lower_hull(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<int> hull;
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2], b = hull.back();
            // Pop b unless it lies strictly below chord (a, i).
            const double lhs = (y[static_cast<size_t>(b)] - y[static_cast<size_t>(a)]) *
                               (x[static_cast<size_t>(i)] - x[static_cast<size_t>(b)]);
            const double rhs = (y[static_cast<size_t>(i)] - y[static_cast<size_t>(b)]) *
                               (x[static_cast<size_t>(b)] - x[static_cast<size_t>(a)]);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(i);
    }
    return hull;
}

} // namespace

std::pair<double, double> default_dual_bounds(const GridFn& f) {
    const FinitePoints p = finite_points(f);
    const size_t n = p.x.size();
    if (n == 1) return {-1.0, 1.0};
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (size_t i = 0; i + 1 < n; ++i) {
        const double slope = (p.y[i + 1] - p.y[i]) / (p.x[i + 1] - p.x[i]);
        if (first) {
            lo = hi = slope;
            first = false;
        } else {
            lo = std::min(lo, slope);
            hi = std::max(hi, slope);
        }
    }
    const double width = hi - lo;
    if (width == 0.0) {
        const double d = std::max(0.5, 0.1 * std::fabs(lo));
        return {lo - d, hi + d};
    }
    return {lo - 0.1 * width, hi + 0.1 * width};
}

DualGridFn conjugate_grid(const GridFn& f, double dual_lo, double dual_hi, int m) {
    if (!(dual_lo < dual_hi)) throw BadInterval(dual_lo, dual_hi);
    if (m < 3) throw Error("dual grid needs at least 3 samples");
    const FinitePoints p = finite_points(f);
    const std::vector<int> hull = lower_hull(p.x, p.y);

    DualGridFn out;
    out.lo = dual_lo;
    out.hi = dual_hi;
    out.values.resize(static_cast<size_t>(m));

    const double h = (dual_hi - dual_lo) / (m - 1);
    size_t ptr = 0;
    for (int k = 0; k < m; ++k) {
        const double s = dual_lo + k * h;
        // The argmax index never moves left as s grows; advance only on a
        // strict improvement so exact ties keep the leftmost point.
        while (ptr + 1 < hull.size()) {
            const int cur = hull[ptr], nxt = hull[ptr + 1];
            const double vc = s * p.x[static_cast<size_t>(cur)] - p.y[static_cast<size_t>(cur)];
            const double vn = s * p.x[static_cast<size_t>(nxt)] - p.y[static_cast<size_t>(nxt)];
            if (vn > vc)
                ++ptr;
            else
                break;
        }
        const int j = hull[ptr];
        out.values[static_cast<size_t>(k)] =
            s * p.x[static_cast<size_t>(j)] - p.y[static_cast<size_t>(j)];
    }
    return out;
}

DualGridFn conjugate_grid(const GridFn& f) {
    const auto [lo, hi] = default_dual_bounds(f);
    return conjugate_grid(f, lo, hi, f.size());
}

GridFn biconjugate_grid(const GridFn& f) {
    std::vector<ExtReal> v = f.values();

    for (int pass = 0; pass < 200; ++pass) {
        FinitePoints p;
        for (int i = 0; i < f.size(); ++i) {
            if (v[static_cast<size_t>(i)].is_finite()) {
                p.x.push_back(f.x(i));
                p.y.push_back(v[static_cast<size_t>(i)].value());
            }
        }
        const std::vector<int> hull = lower_hull(p.x, p.y);

        // Envelope values: outside the span of finite samples the function
        // stays +inf; inside it every grid point (finite or not) drops onto
        // the hull, clamped so the envelope can never exceed a finite sample.
        const double x_first = p.x.front(), x_last = p.x.back();
        std::vector<ExtReal> e = v;
        size_t seg = 0;
        for (int i = 0; i < f.size(); ++i) {
            const double xq = f.x(i);
            if (xq < x_first || xq > x_last) continue;
            while (seg + 2 < hull.size() && p.x[static_cast<size_t>(hull[seg + 1])] <= xq)
                ++seg;
            const int a = hull[seg];
            const int b = hull[std::min(seg + 1, hull.size() - 1)];
            double interp;
            if (a == b) {
                interp = p.y[static_cast<size_t>(a)];
            } else {
                const double slope = (p.y[static_cast<size_t>(b)] - p.y[static_cast<size_t>(a)]) /
                                     (p.x[static_cast<size_t>(b)] - p.x[static_cast<size_t>(a)]);
                interp = p.y[static_cast<size_t>(a)] +
                         (xq - p.x[static_cast<size_t>(a)]) * slope;
            }
            const ExtReal& cur = v[static_cast<size_t>(i)];
            e[static_cast<size_t>(i)] =
                cur.is_finite() ? ExtReal(std::min(interp, cur.value())) : ExtReal(interp);
        }

        bool changed = false;
        for (size_t i = 0; i < e.size(); ++i)
            changed = changed || !(e[i] == v[i]);
        v = std::move(e);
        if (!changed) break;
        if (pass == 199) throw Error("biconjugate envelope failed to stabilise");
    }
    return GridFn(f.lo(), f.hi(), std::move(v));
}

} // namespace meanlab
