#pragma once

#include <vector>

#include "meanlab/ext_real.hpp"

namespace meanlab {

// Gauss rule for the normalised singular measure
//
//   (sin(pi lambda)/pi) * t^(lambda-1) * (1-t)^(-lambda) dt   on (0, 1).
//
// The normalisation is baked into `weights`, so integrating the constant 1
// returns 1 (the Beta identity), integrating t returns lambda, and
// integrating (1-t) returns 1-lambda, all to near machine precision.
struct JacobiRule {
    double lambda;
    std::vector<double> nodes;   // ascending, strictly inside (0, 1)
    std::vector<double> weights; // strictly positive, sum to 1
    int size() const { return static_cast<int>(nodes.size()); }
};

// Throws EndpointLambda unless lambda is strictly inside (0, 1).
JacobiRule jacobi_rule(double lambda, int n);

// Gauss-Legendre rule on the reference interval [-1, 1]; weights sum to 2.
struct LegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

// Cached by n; the rule for a given n is built once per process.
const LegendreRule& legendre_rule(int n);

// Sum of w_i * f(t_i) in ascending node order.  A +inf sample absorbs the
// whole integral because every weight is positive.
template <class F>
ExtReal integrate_beta(const JacobiRule& rule, F&& f) {
    ExtReal acc(0.0);
    for (int i = 0; i < rule.size(); ++i)
        acc = ext_add(acc, ext_scale(rule.weights[static_cast<size_t>(i)],
                                     ExtReal(f(rule.nodes[static_cast<size_t>(i)]))));
    return acc;
}

// Same accumulation for integrands known to stay finite.
template <class F>
double integrate_beta_finite(const JacobiRule& rule, F&& f) {
    double acc = 0.0;
    for (int i = 0; i < rule.size(); ++i)
        acc += rule.weights[static_cast<size_t>(i)] * f(rule.nodes[static_cast<size_t>(i)]);
    return acc;
}

// n-point Gauss-Legendre approximation of the integral of f over [a, b].
// Throws BadInterval unless a < b.
template <class F>
double integrate_smooth(F&& f, double a, double b, int n) {
    if (!(a < b)) throw BadInterval(a, b);
    const LegendreRule& rule = legendre_rule(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < rule.size(); ++i)
        acc += rule.weights[static_cast<size_t>(i)] * f(mid + half * rule.nodes[static_cast<size_t>(i)]);
    return half * acc;
}

} // namespace meanlab
