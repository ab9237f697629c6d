#include "meanlab/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "meanlab/errors.hpp"

namespace meanlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Diagonalises a symmetric tridiagonal matrix by the implicit QL method and
// accumulates only the first row of the eigenvector matrix, which is all
// Golub-Welsch needs.  d: diagonal, e: sub-diagonal (e[n-1] is workspace),
// z: on entry the seed row, on exit the first eigenvector components.
// Eigenvalues come back ascending in d with z permuted alongside.
void imtqlx(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    const double prec = std::numeric_limits<double>::epsilon();
    e[static_cast<size_t>(n - 1)] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            while (m < n - 1 &&
                   std::fabs(e[static_cast<size_t>(m)]) >
                       prec * (std::fabs(d[static_cast<size_t>(m)]) + std::fabs(d[static_cast<size_t>(m + 1)])))
                ++m;
            double p = d[static_cast<size_t>(l)];
            if (m == l) break;
            if (iter == 30) throw EigenFailure("tridiagonal QL did not converge in 30 sweeps");
            ++iter;

            double g = (d[static_cast<size_t>(l + 1)] - p) / (2.0 * e[static_cast<size_t>(l)]);
            double r = std::sqrt(g * g + 1.0);
            g = d[static_cast<size_t>(m)] - p + e[static_cast<size_t>(l)] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0;
            p = 0.0;

            for (int i = m - 1; i >= l; --i) {
                double f = s * e[static_cast<size_t>(i)];
                double b = c * e[static_cast<size_t>(i)];
                if (std::fabs(g) <= std::fabs(f)) {
                    c = g / f;
                    r = std::sqrt(c * c + 1.0);
                    e[static_cast<size_t>(i + 1)] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = std::sqrt(s * s + 1.0);
                    e[static_cast<size_t>(i + 1)] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = d[static_cast<size_t>(i + 1)] - p;
                r = (d[static_cast<size_t>(i)] - g) * s + 2.0 * c * b;
                p = s * r;
                d[static_cast<size_t>(i + 1)] = g + p;
                g = c * r - b;
                f = z[static_cast<size_t>(i + 1)];
                z[static_cast<size_t>(i + 1)] = s * z[static_cast<size_t>(i)] + c * f;
                z[static_cast<size_t>(i)] = c * z[static_cast<size_t>(i)] - s * f;
            }
            d[static_cast<size_t>(l)] -= p;
            e[static_cast<size_t>(l)] = g;
            e[static_cast<size_t>(m)] = 0.0;
        }
    }

    for (int i = 1; i < n; ++i) {
        int k = i - 1;
        double p = d[static_cast<size_t>(k)];
        for (int j = i; j < n; ++j) {
            if (d[static_cast<size_t>(j)] < p) {
                k = j;
                p = d[static_cast<size_t>(j)];
            }
        }
        if (k != i - 1) {
            d[static_cast<size_t>(k)] = d[static_cast<size_t>(i - 1)];
            d[static_cast<size_t>(i - 1)] = p;
            std::swap(z[static_cast<size_t>(i - 1)], z[static_cast<size_t>(k)]);
        }
    }
}

struct GolubWelsch {
    std::vector<double> nodes;   // eigenvalues, ascending
    std::vector<double> weights; // zemu * (first eigenvector component)^2
};

GolubWelsch golub_welsch(std::vector<double> d, std::vector<double> e, double zemu) {
    const size_t n = d.size();
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    imtqlx(d, e, z);
    std::vector<double> w(n);
    for (size_t i = 0; i < n; ++i) w[i] = zemu * z[i] * z[i];
    return {std::move(d), std::move(w)};
}

} // namespace

JacobiRule jacobi_rule(double lambda, int n) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw EndpointLambda(lambda);
    if (n < 1) throw Error("quadrature rule needs at least one node");

    // Three-term recurrence for the Jacobi weight (1-x)^alpha (1+x)^beta on
    // [-1, 1] with alpha = -lambda, beta = lambda - 1 (so alpha + beta = -1).
    std::vector<double> d(static_cast<size_t>(n)), e(static_cast<size_t>(n));
    d[0] = 2.0 * lambda - 1.0;
    e[0] = std::sqrt(2.0 * lambda * (1.0 - lambda));
    for (int i = 2; i <= n; ++i) {
        const double abi = 2.0 * i - 1.0;
        d[static_cast<size_t>(i - 1)] = (1.0 - 2.0 * lambda) / ((abi - 2.0) * abi);
        const double abi2 = abi * abi;
        e[static_cast<size_t>(i - 1)] =
            std::sqrt(4.0 * i * (i - lambda) * (i + lambda - 1.0) * (i - 1.0) / ((abi2 - 1.0) * abi2));
    }

    // Total mass of the un-normalised weight is Beta(lambda, 1-lambda) =
    // pi/sin(pi lambda); the sin(pi lambda)/pi factor folded into the weights
    // below makes the rule integrate 1 to 1 exactly in exact arithmetic.
    const double zemu = kPi / std::sin(kPi * lambda);
    GolubWelsch gw = golub_welsch(std::move(d), std::move(e), zemu);

    JacobiRule rule;
    rule.lambda = lambda;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    const double norm = std::sin(kPi * lambda) / kPi;
    for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
        rule.nodes[i] = 0.5 * (1.0 + gw.nodes[i]);
        rule.weights[i] = norm * gw.weights[i];
    }
    return rule;
}

namespace {

LegendreRule build_legendre(int n) {
    if (n < 1) throw Error("quadrature rule needs at least one node");
    std::vector<double> d(static_cast<size_t>(n), 0.0), e(static_cast<size_t>(n), 0.0);
    for (int i = 1; i < n; ++i)
        e[static_cast<size_t>(i - 1)] = i / std::sqrt(4.0 * i * i - 1.0);
    GolubWelsch gw = golub_welsch(std::move(d), std::move(e), 2.0);
    return {std::move(gw.nodes), std::move(gw.weights)};
}

} // namespace

const LegendreRule& legendre_rule(int n) {
    static std::mutex mu;
    static std::map<int, LegendreRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_legendre(n)).first;
    return it->second;
}

} // namespace meanlab
