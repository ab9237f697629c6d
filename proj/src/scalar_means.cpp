#include "meanlab/scalar_means.hpp"

#include <cmath>

#include "meanlab/quadrature.hpp"

namespace meanlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double weighted_mean(const ScalarPair& p, const Weight& w, MeanKind kind) {
    const double l = w.lambda;
    switch (kind) {
        case MeanKind::arithmetic: return (1.0 - l) * p.a + l * p.b;
        case MeanKind::geometric: return std::pow(p.a, 1.0 - l) * std::pow(p.b, l);
        case MeanKind::harmonic: return 1.0 / ((1.0 - l) / p.a + l / p.b);
    }
    throw Error("unknown mean kind");
}

double heron(const ScalarPair& p, const Weight& w) {
    return (1.0 - w.lambda) * std::sqrt(p.a * p.b) + w.lambda * 0.5 * (p.a + p.b);
}

double heinz(const ScalarPair& p, const Weight& w) {
    const double l = w.lambda;
    return 0.5 * (std::pow(p.a, 1.0 - l) * std::pow(p.b, l) +
                  std::pow(p.a, l) * std::pow(p.b, 1.0 - l));
}

CoeffTable coefficients(const Weight& w) {
    const double l = w.lambda;
    CoeffTable t;
    t.r = std::min(l, 1.0 - l);
    t.theta = 1.0 - std::sin(kPi * l);
    t.alpha = (2.0 * l - 1.0) * (2.0 * l - 1.0);
    t.delta = 1.0 - 4.0 * l * (1.0 - l) * std::sin(kPi * l);
    return t;
}

namespace {

double big_M(double l, double p) {
    const double first = std::pow(p * (1.0 - l) / (2.0 - p * (1.0 - l)), l);
    const double second = (1.0 - p) * std::pow((1.0 - l) / (1.0 + l), l);
    return 0.5 * (first + second);
}

double small_m(double l, double p) {
    const double first = p * std::pow((2.0 - 2.0 * l + p * l) / (2.0 + 2.0 * l - p * l), l);
    const double second = (1.0 - p) * std::pow((2.0 - l + p * l) / (2.0 + l - p * l), l);
    return first + second;
}

} // namespace

GammaPTable gamma_p(const Weight& w, double p) {
    const double l = w.lambda;
    if (l == 0.0 || l == 1.0) throw EndpointLambda(l);
    if (!(p >= 0.0 && p <= 1.0)) throw Error("p must lie in [0, 1]");

    GammaPTable t;
    t.big_m = big_M(l, p);
    t.small_m = small_m(l, p);
    t.big_m_swap = big_M(1.0 - l, p);
    t.small_m_swap = small_m(1.0 - l, p);
    t.script_m = 0.5 * (t.big_m + t.small_m_swap);
    t.script_m_swap = 0.5 * (t.big_m_swap + t.small_m);
    t.gamma = 1.0 - (2.0 * std::sin(kPi * l) / kPi) *
                        ((1.0 - l) * t.script_m + l * t.script_m_swap);
    return t;
}

YoungGapBounds young_gap_bounds(const ScalarPair& p, const Weight& w) {
    const double r = std::min(w.lambda, 1.0 - w.lambda);
    const double d = std::sqrt(p.a) - std::sqrt(p.b);
    return {r * d * d, (1.0 - r) * d * d};
}

HeinzReverseBounds heinz_reverse_bounds(const ScalarPair& p, const Weight& w) {
    const double l = w.lambda;
    const double r = std::min(l, 1.0 - l);
    const double half_sum = 0.5 * (p.a + p.b);
    const double log_term = (p.b - p.a) * std::log(p.b / p.a);
    const double root_gap = std::sqrt(p.a) - std::sqrt(p.b);
    const double sin_l = std::sin(kPi * l);

    HeinzReverseBounds out;
    out.linear_log = half_sum - 0.5 * l * (1.0 - l) * log_term;
    out.squared = half_sum * half_sum - 0.5 * (1.0 - r) * (p.a - p.b) * (p.a - p.b);
    out.mixed = half_sum - 2.0 * l * (1.0 - l) * sin_l * root_gap * root_gap -
                (2.0 * l - 1.0) * (2.0 * l - 1.0) * (sin_l / (2.0 * kPi)) * log_term;
    return out;
}

double scalar_J(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw Error("scalar_J needs strictly positive arguments");
    return (a - b) * (std::log(a) - std::log(b));
}

double psi(double t, double lambda) {
    if (!(t > 0.0 && t <= 0.5)) throw BadInterval(t, 0.5);
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("psi weight must lie in [0, 1]");
    return std::pow(t / (1.0 - t), lambda);
}

HHBounds hh_bounds(const std::function<double(double)>& phi, double a, double b, double p) {
    if (!(a < b)) throw BadInterval(a, b);
    if (!(p >= 0.0 && p <= 1.0)) throw Error("p must lie in [0, 1]");

    HHBounds out;
    out.midpoint = phi(0.5 * (a + b));
    out.lower = p * phi(0.5 * (p * b + (2.0 - p) * a)) +
                (1.0 - p) * phi(0.5 * ((1.0 + p) * b + (1.0 - p) * a));
    out.integral_mean = integrate_smooth(phi, a, b, 64) / (b - a);
    out.upper = 0.5 * (phi(p * b + (1.0 - p) * a) + p * phi(a) + (1.0 - p) * phi(b));
    out.endpoint_avg = 0.5 * (phi(a) + phi(b));
    return out;
}

namespace {

// (t-1) / ((t+1) log t), extended through the removable singularity at t = 1
// by the series u/log(1+u) = 1 + u/2 - u^2/12 + O(u^3), u = t - 1.
double slope_ratio(double t) {
    const double u = t - 1.0;
    if (std::fabs(u) < 1e-6) return (1.0 + 0.5 * u - u * u / 12.0) / (t + 1.0);
    return u / ((t + 1.0) * std::log(t));
}

} // namespace

ComparisonValues comparison_fns(double t, const Weight& w) {
    if (!(t > 0.0)) throw Error("comparison_fns needs t > 0");
    const double l = w.lambda;
    const double sin_l = std::sin(kPi * l);
    const double r = std::min(l, 1.0 - l);
    const double alpha = (2.0 * l - 1.0) * (2.0 * l - 1.0);

    ComparisonValues v;
    v.h = l * (1.0 - l) - alpha * sin_l / kPi;
    v.k = kPi - kPi * (1.0 - 2.0 * l) * std::cos(kPi * l) + 4.0 * sin_l;
    v.g = (t + 1.0) * (v.h - 2.0 * l * (1.0 - l) * sin_l * slope_ratio(t));
    v.f = (t == 1.0) ? 0.0 : v.g * (t - 1.0) * std::log(t);

    const double tm1 = t - 1.0, tp1 = t + 1.0;
    v.alpha_t = 2.0 * (1.0 - r) * tm1 * tm1 - tp1 * tp1;
    const double root_gap = std::sqrt(t) - 1.0;
    const double log_t = (t == 1.0) ? 0.0 : std::log(t);
    v.beta_t = tp1 - 4.0 * l * (1.0 - l) * root_gap * root_gap * sin_l -
               alpha * tm1 * log_t * sin_l / kPi;
    return v;
}

} // namespace meanlab
