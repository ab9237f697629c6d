#pragma once

#include <functional>

#include "meanlab/errors.hpp"

namespace meanlab {

// Interpolation weight in [0, 1].
struct Weight {
    explicit Weight(double v) : lambda(v) {
        if (!(v >= 0.0 && v <= 1.0)) throw Error("weight must lie in [0, 1]");
    }
    double lambda;
    Weight swap() const { return Weight(1.0 - lambda); }
};

// Pair of strictly positive scalars.
struct ScalarPair {
    ScalarPair(double a_, double b_) : a(a_), b(b_) {
        if (!(a > 0.0) || !(b > 0.0)) throw Error("scalars must be strictly positive");
    }
    double a, b;
};

enum class MeanKind { arithmetic, geometric, harmonic };

// (1-l)a + lb, a^(1-l) b^l, or ((1-l)/a + l/b)^(-1).
double weighted_mean(const ScalarPair& p, const Weight& w, MeanKind kind);

// Heron mean (1-l) sqrt(ab) + l (a+b)/2: the straight line from the geometric
// to the arithmetic mean.
double heron(const ScalarPair& p, const Weight& w);

// Heinz mean (a^(1-l) b^l + a^l b^(1-l)) / 2.
double heinz(const ScalarPair& p, const Weight& w);

// The weight-only coefficients the inequalities are phrased with.
struct CoeffTable {
    double r;     // min(l, 1-l)
    double theta; // 1 - sin(pi l)
    double alpha; // (2l - 1)^2
    double delta; // 1 - 4 l (1-l) sin(pi l)
};
CoeffTable coefficients(const Weight& w);

// Closed-form interpolation coefficient gamma_p(l) together with its
// building blocks.  Requires l strictly inside (0, 1) and p in [0, 1];
// endpoints of l throw EndpointLambda.
struct GammaPTable {
    double big_m;        // M_l(p)
    double small_m;      // m_l(p)
    double big_m_swap;   // M_{1-l}(p)
    double small_m_swap; // m_{1-l}(p)
    double script_m;      // (M_l(p) + m_{1-l}(p)) / 2
    double script_m_swap; // (M_{1-l}(p) + m_l(p)) / 2
    double gamma;
};
GammaPTable gamma_p(const Weight& w, double p);

// Sharp additive bounds on the arithmetic-geometric gap:
//   r (sqrt a - sqrt b)^2 <= (1-l)a + lb - a^(1-l)b^l <= (1-r)(sqrt a - sqrt b)^2.
struct YoungGapBounds {
    double lower;
    double upper;
};
YoungGapBounds young_gap_bounds(const ScalarPair& p, const Weight& w);

// Lower bounds that run *below* the Heinz mean (reverse direction).
struct HeinzReverseBounds {
    double linear_log; // (a+b)/2 - (1/2) l(1-l)(b-a) log(b/a), bounds HZ
    double squared;    // ((a+b)/2)^2 - (1/2)(1-r)(a-b)^2, bounds HZ^2
    double mixed;      // (a+b)/2 - 2l(1-l) sin(pi l)(sqrt a - sqrt b)^2
                       //         - (2l-1)^2 (sin(pi l)/(2 pi)) (b-a) log(b/a), bounds HZ
};
HeinzReverseBounds heinz_reverse_bounds(const ScalarPair& p, const Weight& w);

// (a - b)(log a - log b): the scalar value of the entropy-gap functional.
double scalar_J(double a, double b);

// (t/(1-t))^l for t in (0, 1/2].  Concave left of (1-l)/2, convex right of it.
double psi(double t, double lambda);

// Two-sided refinement of Hermite-Hadamard for a convex phi on [a, b]:
//   phi((a+b)/2) <= m(p) <= (integral mean) <= M(p) <= (phi(a)+phi(b))/2.
struct HHBounds {
    double midpoint;
    double lower;         // m(p)
    double integral_mean; // 64-node Gauss-Legendre of phi over [a, b], / (b-a)
    double upper;         // M(p)
    double endpoint_avg;
};
HHBounds hh_bounds(const std::function<double(double)>& phi, double a, double b, double p);

// The comparison apparatus for the two Heinz lower bounds: f decides which
// bound is tighter at (l, t); h and k are its weight-only ingredients;
// alpha_t + beta_t^2 >= 0 is the conjectured inequality.
struct ComparisonValues {
    double f;
    double g;
    double h;
    double k;
    double alpha_t;
    double beta_t;
};
ComparisonValues comparison_fns(double t, const Weight& w);

} // namespace meanlab
