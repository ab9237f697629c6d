#include "meanlab/functional_means.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "meanlab/errors.hpp"
#include "meanlab/operator_means.hpp"

namespace meanlab {

namespace {

bool is_endpoint(const Weight& w) { return w.lambda == 0.0 || w.lambda == 1.0; }

void check_rule(const JacobiRule& rule, double lambda) {
    if (rule.lambda != lambda) throw LambdaMismatch(rule.lambda, lambda);
}

void check_probes(const QuadPair& p, const ProbeSet& probes) {
    for (const auto& x : probes)
        if (static_cast<int>(x.size()) != p.dim())
            throw DimMismatch(static_cast<int>(x.size()), p.dim());
}

std::vector<double> values_at(const QuadForm& q, const ProbeSet& probes) {
    std::vector<double> out;
    out.reserve(probes.size());
    for (const auto& x : probes) out.push_back(q.value(x));
    return out;
}

double half_quad_value(const SymMatrix& s, const std::vector<double>& x) {
    const auto sx = matvec(s.raw(), x);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * sx[i];
    return 0.5 * acc;
}

double rel_residual(double lhs, double rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
}

} // namespace

QuadPair::QuadPair(QuadForm f_, QuadForm g_) : f(std::move(f_)), g(std::move(g_)) {
    if (f.dim() != g.dim()) throw DimMismatch(f.dim(), g.dim());
}

QuadForm arith_fn(const QuadPair& p, const Weight& t) {
    if (t.lambda == 0.0) return p.f;
    if (t.lambda == 1.0) return p.g;
    SymMatrix s = p.f.a.sym().scale(1.0 - t.lambda).add(p.g.a.sym().scale(t.lambda));
    return QuadForm(SpdMatrix(s));
}

QuadForm harm_fn(const QuadPair& p, const Weight& t) {
    return harmonic_combine_quad(p.f, p.g, t);
}

std::vector<double> geom_fn(const QuadPair& p, const Weight& w,
                            const JacobiRule& rule, const ProbeSet& probes) {
    check_probes(p, probes);
    if (is_endpoint(w)) return values_at(w.lambda == 0.0 ? p.f : p.g, probes);
    check_rule(rule, w.lambda);
    std::vector<double> out(probes.size(), 0.0);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const QuadForm ht = harm_fn(p, Weight(rule.nodes[k]));
        for (std::size_t i = 0; i < probes.size(); ++i)
            out[i] += rule.weights[k] * ht.value(probes[i]);
    }
    return out;
}

std::vector<double> heron_fn(const QuadPair& p, const Weight& w,
                             const JacobiRule& rule_half, const ProbeSet& probes) {
    check_probes(p, probes);
    if (w.lambda == 1.0) return values_at(arith_fn(p, Weight(0.5)), probes);
    auto geo = geom_fn(p, Weight(0.5), rule_half, probes);
    if (w.lambda == 0.0) return geo;
    const auto ari = values_at(arith_fn(p, Weight(0.5)), probes);
    for (std::size_t i = 0; i < geo.size(); ++i)
        geo[i] = (1.0 - w.lambda) * geo[i] + w.lambda * ari[i];
    return geo;
}

std::vector<double> heinz_fn(const QuadPair& p, const Weight& w,
                             const JacobiRule& rule, const JacobiRule& rule_swap,
                             const ProbeSet& probes) {
    check_probes(p, probes);
    if (is_endpoint(w)) return values_at(arith_fn(p, Weight(0.5)), probes);
    auto lo = geom_fn(p, w, rule, probes);
    const auto hi = geom_fn(p, w.swap(), rule_swap, probes);
    for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = 0.5 * (lo[i] + hi[i]);
    return lo;
}

std::vector<double> theta_fn(const QuadPair& p, const Weight& w, const ProbeSet& probes) {
    check_probes(p, probes);
    if (is_endpoint(w)) return values_at(arith_fn(p, Weight(0.5)), probes);
    const QuadForm a = harm_fn(p, w);
    const QuadForm b = harm_fn(p, w.swap());
    std::vector<double> out;
    out.reserve(probes.size());
    for (const auto& x : probes) out.push_back(0.5 * (a.value(x) + b.value(x)));
    return out;
}

std::vector<double> ell_fn(const QuadPair& p, const Weight& mu, const ProbeSet& probes) {
    check_probes(p, probes);
    const QuadForm h = harm_fn(p, Weight(0.5));
    if (mu.lambda == 0.0) return values_at(h, probes);
    const QuadForm a = arith_fn(p, Weight(0.5));
    if (mu.lambda == 1.0) return values_at(a, probes);
    std::vector<double> out;
    out.reserve(probes.size());
    for (const auto& x : probes)
        out.push_back((1.0 - mu.lambda) * h.value(x) + mu.lambda * a.value(x));
    return out;
}

std::vector<double> j_fn(const QuadPair& p, int nodes, const ProbeSet& probes) {
    check_probes(p, probes);
    const LegendreRule& leg = legendre_rule(nodes);
    std::vector<double> out(probes.size(), 0.0);
    for (std::size_t k = 0; k < leg.nodes.size(); ++k) {
        const double t = 0.5 * (1.0 + leg.nodes[k]);
        const double wk = 0.5 * leg.weights[k] / (t * (1.0 - t));
        const QuadForm at = arith_fn(p, Weight(t));
        const QuadForm ht = harm_fn(p, Weight(t));
        for (std::size_t i = 0; i < probes.size(); ++i)
            out[i] += wk * (at.value(probes[i]) - ht.value(probes[i]));
    }
    return out;
}

double j_fn(const QuadPair& p, int nodes, const std::vector<double>& probe) {
    return j_fn(p, nodes, ProbeSet{probe})[0];
}

double IdentityResiduals::worst() const {
    return std::max(std::max(agm_gap, agm_gap_half), std::max(heinz_gap, entropy_rep));
}

IdentityResiduals identity_residuals(const QuadPair& p, const Weight& w,
                                     const ProbeSet& probes, int nodes) {
    if (is_endpoint(w)) throw EndpointLambda(w.lambda);
    check_probes(p, probes);
    const JacobiRule rule = jacobi_rule(w.lambda, nodes);
    const JacobiRule rule_swap = jacobi_rule(1.0 - w.lambda, nodes);
    const JacobiRule rule_half = jacobi_rule(0.5, nodes);
    const LegendreRule& leg = legendre_rule(nodes);

    // Per-probe values of the gap (1-t) f + t g - H_t at each node set.
    auto gap_profile = [&](const std::vector<double>& ts) {
        std::vector<std::vector<double>> gaps(ts.size());
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const QuadForm at = arith_fn(p, Weight(ts[k]));
            const QuadForm ht = harm_fn(p, Weight(ts[k]));
            gaps[k].reserve(probes.size());
            for (const auto& x : probes)
                gaps[k].push_back(at.value(x) - ht.value(x));
        }
        return gaps;
    };
    auto weighted_sum = [&](const std::vector<std::vector<double>>& gaps,
                            const std::vector<double>& ws, std::size_t i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < ws.size(); ++k) acc += ws[k] * gaps[k][i];
        return acc;
    };

    const auto d_lam = gap_profile(rule.nodes);
    const auto d_swap = gap_profile(rule_swap.nodes);
    const auto d_half = gap_profile(rule_half.nodes);

    const SpdMatrix& a = p.f.a;
    const SpdMatrix& b = p.g.a;
    const SymMatrix sharp_w = op_mean(a, b, w, OpMeanKind::sharp).sym();
    const SymMatrix sharp_half = op_mean(a, b, Weight(0.5), OpMeanKind::sharp).sym();
    const SymMatrix heinz_w = heinz_op(a, b, w).sym();
    const SymMatrix j_exact = j_closed(a, b);
    const QuadForm arith_w = arith_fn(p, w);
    const QuadForm arith_half = arith_fn(p, Weight(0.5));

    IdentityResiduals out;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto& x = probes[i];
        const double aw = arith_w.value(x);
        const double ah = arith_half.value(x);

        const double lhs_agm = aw - half_quad_value(sharp_w, x);
        out.agm_gap = std::max(out.agm_gap, rel_residual(lhs_agm, weighted_sum(d_lam, rule.weights, i)));

        const double lhs_half = ah - half_quad_value(sharp_half, x);
        out.agm_gap_half =
            std::max(out.agm_gap_half, rel_residual(lhs_half, weighted_sum(d_half, rule_half.weights, i)));

        const double lhs_heinz = ah - half_quad_value(heinz_w, x);
        const double rhs_heinz =
            0.5 * (weighted_sum(d_lam, rule.weights, i) + weighted_sum(d_swap, rule_swap.weights, i));
        out.heinz_gap = std::max(out.heinz_gap, rel_residual(lhs_heinz, rhs_heinz));
    }

    // Entropy gap: integrate the arithmetic-Theta distance over (0, 1/2],
    // doubled, against the exact closed form.
    std::vector<double> rhs_entropy(probes.size(), 0.0);
    for (std::size_t k = 0; k < leg.nodes.size(); ++k) {
        const double t = 0.25 * (1.0 + leg.nodes[k]);
        const double wk = 0.5 * leg.weights[k] / (t * (1.0 - t));
        const auto th = theta_fn(p, Weight(t), probes);
        const QuadForm at = arith_fn(p, Weight(0.5));
        for (std::size_t i = 0; i < probes.size(); ++i)
            rhs_entropy[i] += wk * (at.value(probes[i]) - th[i]);
    }
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const double lhs = half_quad_value(j_exact, probes[i]);
        out.entropy_rep = std::max(out.entropy_rep, rel_residual(lhs, rhs_entropy[i]));
    }
    return out;
}

// -------------------- sampled pairs --------------------

GridPair::GridPair(GridFn f_, GridFn g_) : f(std::move(f_)), g(std::move(g_)) {
    if (!f.same_grid(g)) throw Error("sampled pair must share one grid");
    bool meet = false;
    for (int i = 0; i < f.size(); ++i)
        if (f[i].is_finite() && g[i].is_finite()) { meet = true; break; }
    if (!meet) throw EmptyDomain();
}

namespace {

struct SharedDual {
    double lo, hi;
    DualGridFn cf, cg;
};

SharedDual make_duals(const GridPair& p, const DualSpec& spec) {
    double lo, hi;
    if (spec.auto_bounds) {
        const auto bf = default_dual_bounds(p.f);
        const auto bg = default_dual_bounds(p.g);
        lo = std::min(bf.first, bg.first);
        hi = std::max(bf.second, bg.second);
    } else {
        lo = spec.lo;
        hi = spec.hi;
    }
    const int m = spec.size > 0 ? spec.size : p.f.size();
    return SharedDual{lo, hi, conjugate_grid(p.f, lo, hi, m), conjugate_grid(p.g, lo, hi, m)};
}

// Values on the primal grid of ((1-t) f* + t g*)* for interior t.
std::vector<double> harm_values(const SharedDual& d, double t, const GridFn& like) {
    std::vector<double> combo(d.cf.values.size());
    for (std::size_t k = 0; k < combo.size(); ++k)
        combo[k] = (1.0 - t) * d.cf.values[k] + t * d.cg.values[k];
    const GridFn dual(d.lo, d.hi, std::vector<ExtReal>(combo.begin(), combo.end()));
    const DualGridFn back = conjugate_grid(dual, like.lo(), like.hi(), like.size());
    return back.values;
}

GridFn wrap(const GridFn& like, const std::vector<double>& v) {
    return GridFn(like.lo(), like.hi(), std::vector<ExtReal>(v.begin(), v.end()));
}

GridFn half_sum(const GridPair& p) {
    std::vector<ExtReal> v;
    v.reserve(p.f.size());
    for (int i = 0; i < p.f.size(); ++i)
        v.push_back(ext_scale(0.5, ext_add(p.f[i], p.g[i])));
    return GridFn(p.f.lo(), p.f.hi(), std::move(v));
}

} // namespace

GridFn arith_fn(const GridPair& p, const Weight& t) {
    if (t.lambda == 0.0) return p.f;
    if (t.lambda == 1.0) return p.g;
    std::vector<ExtReal> v;
    v.reserve(p.f.size());
    for (int i = 0; i < p.f.size(); ++i)
        v.push_back(ext_add(ext_scale(1.0 - t.lambda, p.f[i]), ext_scale(t.lambda, p.g[i])));
    return GridFn(p.f.lo(), p.f.hi(), std::move(v));
}

GridFn harm_fn(const GridPair& p, const Weight& t, const DualSpec& spec) {
    if (t.lambda == 0.0) return p.f;
    if (t.lambda == 1.0) return p.g;
    const SharedDual d = make_duals(p, spec);
    return wrap(p.f, harm_values(d, t.lambda, p.f));
}

GridFn geom_fn(const GridPair& p, const Weight& w, const JacobiRule& rule,
               const DualSpec& spec) {
    if (w.lambda == 0.0) return p.f;
    if (w.lambda == 1.0) return p.g;
    check_rule(rule, w.lambda);
    const SharedDual d = make_duals(p, spec);
    std::vector<double> acc(static_cast<std::size_t>(p.f.size()), 0.0);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const auto hv = harm_values(d, rule.nodes[k], p.f);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += rule.weights[k] * hv[i];
    }
    return wrap(p.f, acc);
}

GridFn heron_fn(const GridPair& p, const Weight& w, const JacobiRule& rule_half,
                const DualSpec& spec) {
    if (w.lambda == 0.0) return geom_fn(p, Weight(0.5), rule_half, spec);
    if (w.lambda == 1.0) return arith_fn(p, Weight(0.5));
    const GridFn geo = geom_fn(p, Weight(0.5), rule_half, spec);
    const GridFn ari = arith_fn(p, Weight(0.5));
    std::vector<ExtReal> v;
    v.reserve(geo.size());
    for (int i = 0; i < geo.size(); ++i)
        v.push_back(ext_add(ext_scale(1.0 - w.lambda, geo[i]), ext_scale(w.lambda, ari[i])));
    return GridFn(geo.lo(), geo.hi(), std::move(v));
}

GridFn heinz_fn(const GridPair& p, const Weight& w, const JacobiRule& rule,
                const JacobiRule& rule_swap, const DualSpec& spec) {
    if (w.lambda == 0.0 || w.lambda == 1.0) return half_sum(p);
    check_rule(rule, w.lambda);
    check_rule(rule_swap, 1.0 - w.lambda);
    const SharedDual d = make_duals(p, spec);
    std::vector<double> acc(static_cast<std::size_t>(p.f.size()), 0.0);
    for (const JacobiRule* r : {&rule, &rule_swap})
        for (std::size_t k = 0; k < r->nodes.size(); ++k) {
            const auto hv = harm_values(d, r->nodes[k], p.f);
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] += 0.5 * r->weights[k] * hv[i];
        }
    return wrap(p.f, acc);
}

GridFn theta_fn(const GridPair& p, const Weight& w, const DualSpec& spec) {
    if (w.lambda == 0.0 || w.lambda == 1.0) return half_sum(p);
    const SharedDual d = make_duals(p, spec);
    const auto a = harm_values(d, w.lambda, p.f);
    const auto b = harm_values(d, 1.0 - w.lambda, p.f);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (a[i] + b[i]);
    return wrap(p.f, v);
}

GridFn ell_fn(const GridPair& p, const Weight& mu, const DualSpec& spec) {
    if (mu.lambda == 0.0) return harm_fn(p, Weight(0.5), spec);
    if (mu.lambda == 1.0) return arith_fn(p, Weight(0.5));
    const GridFn h = harm_fn(p, Weight(0.5), spec);
    const GridFn a = arith_fn(p, Weight(0.5));
    std::vector<ExtReal> v;
    v.reserve(h.size());
    for (int i = 0; i < h.size(); ++i)
        v.push_back(ext_add(ext_scale(1.0 - mu.lambda, h[i]), ext_scale(mu.lambda, a[i])));
    return GridFn(h.lo(), h.hi(), std::move(v));
}

GridFn j_fn(const GridPair& p, int nodes, const DualSpec& spec) {
    const SharedDual d = make_duals(p, spec);
    const LegendreRule& leg = legendre_rule(nodes);
    std::vector<ExtReal> acc(static_cast<std::size_t>(p.f.size()), ExtReal(0.0));
    for (std::size_t k = 0; k < leg.nodes.size(); ++k) {
        const double t = 0.5 * (1.0 + leg.nodes[k]);
        const double wk = 0.5 * leg.weights[k] / (t * (1.0 - t));
        const GridFn ari = arith_fn(p, Weight(t));
        const auto hv = harm_values(d, t, p.f);
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc[i] = ext_add(acc[i], ext_scale(wk, ext_sub(ari[i], ExtReal(hv[i]))));
    }
    return GridFn(p.f.lo(), p.f.hi(), std::move(acc));
}

} // namespace meanlab
