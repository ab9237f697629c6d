#include "meanlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "meanlab/errors.hpp"
#include "meanlab/functional_means.hpp"
#include "meanlab/operator_means.hpp"
#include "meanlab/quad_form.hpp"
#include "meanlab/quadrature.hpp"
#include "meanlab/scalar_means.hpp"
#include "meanlab/spd_matrix.hpp"

namespace meanlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Signed violation of the order lhs <= rhs, normalised by the dominant
// magnitude.  `hint` injects the scale of intermediates that cancel, so that
// near-equality cases measure noise against the quantities actually summed
// rather than against the tiny difference that survives.
double res_le(double lhs, double rhs, double hint = 0.0) {
    const double scale = std::max(std::max(std::abs(lhs), std::abs(rhs)), hint);
    return (lhs - rhs) / (1.0 + scale);
}

double res_eq(double lhs, double rhs, double hint = 0.0) {
    const double scale = std::max(std::max(std::abs(lhs), std::abs(rhs)), hint);
    return std::abs(lhs - rhs) / (1.0 + scale);
}

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

bool interior(double lam) { return lam > 0.0 && lam < 1.0; }

double sym_quad_at(const SymMatrix& s, const std::vector<double>& x) {
    const auto sx = matvec(s.raw(), x);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * sx[i];
    return 0.5 * acc;
}

std::vector<double> form_values(const QuadForm& q, const ProbeSet& probes) {
    std::vector<double> out;
    out.reserve(probes.size());
    for (const auto& x : probes) out.push_back(q.value(x));
    return out;
}

double worst_le(const std::vector<double>& lhs, const std::vector<double>& rhs) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lhs.size(); ++i) m = std::max(m, res_le(lhs[i], rhs[i]));
    return m;
}

double worst_eq(const std::vector<double>& lhs, const std::vector<double>& rhs) {
    double m = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) m = std::max(m, res_eq(lhs[i], rhs[i]));
    return m;
}

} // namespace

Report run_scalar_suite(const SweepConfig& cfg) {
    cfg.validate();
    Stopwatch clock;
    Report rep("scalar", cfg.echo());

    for (double lam : cfg.lambda_grid) {
        const Weight w(lam);
        const CoeffTable c = coefficients(w);
        for (double a : cfg.ab_grid)
            for (double b : cfg.ab_grid) {
                const ScalarPair pr(a, b);
                const double hint = a + b;
                CaseParams cp;
                cp.with_lambda(lam).with_ab(a, b);

                const double ari = weighted_mean(pr, w, MeanKind::arithmetic);
                const double geo = weighted_mean(pr, w, MeanKind::geometric);
                const YoungGapBounds yb = young_gap_bounds(pr, w);
                rep.record("young_gap_lower", cp, res_le(yb.lower, ari - geo, hint), cfg.tol);
                rep.record("young_gap_upper", cp, res_le(ari - geo, yb.upper, hint), cfg.tol);

                const double geo_half = std::sqrt(a * b);
                const double mid = 0.5 * (a + b);
                const double her = heron(pr, w);
                rep.record("heron_above_geometric", cp, res_le(geo_half, her, hint), cfg.tol);
                rep.record("heron_below_arithmetic", cp, res_le(her, mid, hint), cfg.tol);

                const double hz = heinz(pr, w);
                rep.record("heinz_above_geometric", cp, res_le(geo_half, hz, hint), cfg.tol);
                rep.record("heinz_below_arithmetic", cp, res_le(hz, mid, hint), cfg.tol);
                rep.record("heinz_below_heron_interp", cp,
                           res_le(hz, heron(pr, Weight(c.alpha)), hint), cfg.tol);

                const HeinzReverseBounds hb = heinz_reverse_bounds(pr, w);
                rep.record("heinz_reverse_linear_log", cp, res_le(hb.linear_log, hz, hint), cfg.tol);
                rep.record("heinz_reverse_squared", cp, res_le(hb.squared, hz * hz, hint * hint),
                           cfg.tol);
                rep.record("heinz_reverse_mixed", cp, res_le(hb.mixed, hz, hint), cfg.tol);
            }
    }

    // Midpoint/endpoint sandwich around the integral mean of a convex
    // function, exercised on the exponential over the log-image of each
    // scalar pair so the sweep grid is reused.
    for (double a : cfg.ab_grid)
        for (double b : cfg.ab_grid) {
            if (!(a < b)) continue;
            const double hint = a + b;
            for (double p : cfg.p_grid) {
                const HHBounds hh =
                    hh_bounds([](double x) { return std::exp(x); }, std::log(a), std::log(b), p);
                CaseParams cp;
                cp.with_ab(a, b).with_p(p);
                rep.record("hh_midpoint_below_split_lower", cp,
                           res_le(hh.midpoint, hh.lower, hint), cfg.tol);
                rep.record("hh_split_lower_below_integral", cp,
                           res_le(hh.lower, hh.integral_mean, hint), cfg.tol);
                rep.record("hh_integral_below_split_upper", cp,
                           res_le(hh.integral_mean, hh.upper, hint), cfg.tol);
                rep.record("hh_split_upper_below_endpoints", cp,
                           res_le(hh.upper, hh.endpoint_avg, hint), cfg.tol);
            }
        }

    rep.set_elapsed(clock.seconds());
    return rep;
}

Report run_operator_suite(const SweepConfig& cfg) {
    cfg.validate();
    Stopwatch clock;
    Report rep("operator", cfg.echo());

    for (int dim : cfg.spd_dims) {
        const std::uint64_t base = cfg.seed + 1000003ULL * static_cast<std::uint64_t>(dim);
        for (int k = 0; k < cfg.ensemble_size; ++k) {
            const std::uint64_t sa = base + 2ULL * static_cast<std::uint64_t>(k);
            const SpdMatrix a = random_spd(dim, sa);
            const SpdMatrix b = random_spd(dim, sa + 1);
            const double scale = a.sym().frobenius() + b.sym().frobenius();

            // The PSD residual is the most negative eigenvalue of rhs - lhs,
            // measured against the ensemble scale: near-equality differences
            // must not have their roundoff amplified by a small gap norm.
            auto rec = [&](const char* id, const SymMatrix& lhs, const SymMatrix& rhs,
                           const CaseParams& cp) {
                const LoewnerWitness lw = loewner_leq(lhs, rhs, cfg.op_tol);
                const double res = -lw.min_eigenvalue / (1.0 + scale);
                std::string witness;
                if (res > cfg.op_tol) {
                    std::ostringstream os;
                    os << "min eigenvalue " << lw.min_eigenvalue << " of difference:\n";
                    rhs.sub(lhs).write(os);
                    witness = os.str();
                }
                rep.record(id, cp, res, cfg.op_tol, witness);
            };

            const SymMatrix sharp_half = op_mean(a, b, Weight(0.5), OpMeanKind::sharp).sym();
            const SymMatrix nabla_half = op_mean(a, b, Weight(0.5), OpMeanKind::nabla).sym();
            const SymMatrix harm_half = op_mean(a, b, Weight(0.5), OpMeanKind::harm).sym();
            const SymMatrix young_half_gap = nabla_half.sub(sharp_half);
            const SymMatrix jgap = j_closed(a, b);
            const auto heron_at = [&](double mu) {
                return sharp_half.scale(1.0 - mu).add(nabla_half.scale(mu));
            };
            const auto ell_at = [&](double mu) {
                return harm_half.scale(1.0 - mu).add(nabla_half.scale(mu));
            };

            for (double lam : cfg.lambda_grid) {
                const Weight w(lam);
                const CoeffTable c = coefficients(w);
                CaseParams cp;
                cp.with_dim(dim).with_seed(static_cast<long long>(sa)).with_lambda(lam);

                const SymMatrix sharp_l = op_mean(a, b, w, OpMeanKind::sharp).sym();
                const SymMatrix sharp_swap = op_mean(a, b, w.swap(), OpMeanKind::sharp).sym();
                const SymMatrix nabla_l = op_mean(a, b, w, OpMeanKind::nabla).sym();
                rec("op_young_order", sharp_l, nabla_l, cp);

                const SymMatrix young_gap_l = nabla_l.sub(sharp_l);
                rec("op_young_gap_lower", young_half_gap.scale(2.0 * c.r), young_gap_l, cp);
                rec("op_young_gap_upper", young_gap_l, young_half_gap.scale(2.0 * (1.0 - c.r)), cp);

                const SymMatrix heron_l = heron_at(lam);
                rec("op_heron_above_geometric", sharp_half, heron_l, cp);
                rec("op_heron_below_arithmetic", heron_l, nabla_half, cp);

                const SymMatrix heinz_l = sharp_l.add(sharp_swap).scale(0.5);
                rec("op_heinz_above_geometric", sharp_half, heinz_l, cp);
                rec("op_heinz_below_arithmetic", heinz_l, nabla_half, cp);

                const double ll = lam * (1.0 - lam);
                rec("op_heron_refined_lower", sharp_half.add(young_half_gap.scale(ll)), heron_l, cp);
                rec("op_heron_refined_upper", heron_l, nabla_half.sub(young_half_gap.scale(ll)), cp);
                rec("op_heron_tight_lower", sharp_half.add(young_half_gap.scale(c.r)), heron_l, cp);
                rec("op_heron_tight_upper", heron_l, nabla_half.sub(young_half_gap.scale(c.r)), cp);

                const SymMatrix reverse =
                    heron_at(c.delta).sub(jgap.scale(c.alpha * std::sin(kPi * lam) / (2.0 * kPi)));
                rec("op_heinz_entropy_reverse", reverse, heinz_l, cp);

                if (interior(lam))
                    for (double p : cfg.p_grid) {
                        const double g = gamma_p(w, p).gamma;
                        CaseParams cpp;
                        cpp.with_dim(dim)
                            .with_seed(static_cast<long long>(sa))
                            .with_lambda(lam)
                            .with_p(p);
                        const SymMatrix ell_g = ell_at(g);
                        const SymMatrix heron_g = heron_at(g);
                        rec("op_heinz_below_harm_line", heinz_l, ell_g, cpp);
                        rec("op_harm_line_below_heron_line", ell_g, heron_g, cpp);
                        rec("op_heron_line_below_arithmetic", heron_g, nabla_half, cpp);
                    }
            }
        }
    }

    rep.set_elapsed(clock.seconds());
    return rep;
}

namespace {

// Fixed small ensemble for the quadratic-pair tier: the eigenvalue window is
// kept narrow so the pole of t -> harmonic(t) nearest to [0, 1] stays far
// enough out that the quadrature converges well past func_tol at any node
// count >= 32.
constexpr int kQuadDims[] = {1, 2, 3, 4};
constexpr int kQuadPairsPerDim = 8;
constexpr int kProbesPerPair = 9;
constexpr double kQuadLogLo = -1.5, kQuadLogHi = 1.5;

void run_quadratic_tier(const SweepConfig& cfg, Report& rep,
                        const std::function<const JacobiRule&(double)>& rule_for) {
    for (int dim : kQuadDims) {
        const std::uint64_t base = cfg.seed + 7777777ULL * static_cast<std::uint64_t>(dim);
        for (int k = 0; k < kQuadPairsPerDim; ++k) {
            const std::uint64_t sa = base + 2ULL * static_cast<std::uint64_t>(k);
            const SpdMatrix A = random_spd(dim, sa, kQuadLogLo, kQuadLogHi);
            const SpdMatrix B = random_spd(dim, sa + 1, kQuadLogLo, kQuadLogHi);
            const QuadPair qp{QuadForm(A), QuadForm(B)};
            ProbeSet probes;
            for (int i = 0; i < kProbesPerPair; ++i)
                probes.push_back(random_probe(
                    dim, base + 100000ULL + static_cast<std::uint64_t>(kProbesPerPair * k + i)));

            const auto geo_half = geom_fn(qp, Weight(0.5), rule_for(0.5), probes);
            const auto ari_half = form_values(arith_fn(qp, Weight(0.5)), probes);
            const auto har_half = form_values(harm_fn(qp, Weight(0.5)), probes);
            const SymMatrix jop = j_closed(A, B);
            std::vector<double> jv;
            jv.reserve(probes.size());
            for (const auto& x : probes) jv.push_back(sym_quad_at(jop, x));

            const auto combo = [&](const std::vector<double>& lo, const std::vector<double>& hi,
                                   double mu) {
                std::vector<double> v(lo.size());
                for (std::size_t i = 0; i < v.size(); ++i)
                    v[i] = (1.0 - mu) * lo[i] + mu * hi[i];
                return v;
            };
            const auto heron_at = [&](double mu) { return combo(geo_half, ari_half, mu); };
            const auto ell_at = [&](double mu) { return combo(har_half, ari_half, mu); };

            for (double lam : cfg.lambda_grid) {
                if (!interior(lam)) continue;
                const Weight w(lam);
                const CoeffTable c = coefficients(w);
                CaseParams cp;
                cp.with_dim(dim).with_seed(static_cast<long long>(sa)).with_lambda(lam);

                const auto geo = geom_fn(qp, w, rule_for(lam), probes);
                const auto geo_swap = geom_fn(qp, w.swap(), rule_for(1.0 - lam), probes);
                const auto ari = form_values(arith_fn(qp, w), probes);
                const auto har = form_values(harm_fn(qp, w), probes);
                rep.record("fn_harm_below_geom", cp, worst_le(har, geo), cfg.func_tol);
                rep.record("fn_geom_below_arith", cp, worst_le(geo, ari), cfg.func_tol);

                const auto her = heron_at(lam);
                rep.record("fn_heron_weight_monotone_lo", cp, worst_le(heron_at(c.r), her),
                           cfg.op_tol);
                rep.record("fn_heron_weight_monotone_hi", cp, worst_le(her, heron_at(1.0 - c.r)),
                           cfg.op_tol);

                std::vector<double> hz(probes.size());
                for (std::size_t i = 0; i < hz.size(); ++i) hz[i] = 0.5 * (geo[i] + geo_swap[i]);
                rep.record("fn_heinz_below_heron_line", cp, worst_le(hz, heron_at(c.theta)),
                           cfg.func_tol);
                rep.record("fn_heron_line_below_arith", cp, worst_le(heron_at(c.theta), ari_half),
                           cfg.func_tol);

                std::vector<double> gap_l(probes.size()), gap_half_lo(probes.size()),
                    gap_half_hi(probes.size());
                for (std::size_t i = 0; i < probes.size(); ++i) {
                    gap_l[i] = ari[i] - har[i];
                    gap_half_lo[i] = 2.0 * c.r * (ari_half[i] - har_half[i]);
                    gap_half_hi[i] = 2.0 * (1.0 - c.r) * (ari_half[i] - har_half[i]);
                }
                rep.record("fn_harm_gap_lower", cp, worst_le(gap_half_lo, gap_l), cfg.op_tol);
                rep.record("fn_harm_gap_upper", cp, worst_le(gap_l, gap_half_hi), cfg.op_tol);

                const auto ell_l = ell_at(lam);
                rep.record("fn_harm_below_ell", cp, worst_le(har_half, ell_l), cfg.op_tol);
                rep.record("fn_ell_below_heron", cp, worst_le(ell_l, her), cfg.func_tol);
                rep.record("fn_heron_below_arith", cp, worst_le(her, ari_half), cfg.func_tol);

                const auto th = theta_fn(qp, w, probes);
                rep.record("fn_harm_below_theta", cp, worst_le(har_half, th), cfg.op_tol);
                rep.record("fn_theta_below_heinz", cp, worst_le(th, hz), cfg.func_tol);
                rep.record("fn_heinz_below_arith", cp, worst_le(hz, ari_half), cfg.func_tol);

                std::vector<double> reverse(probes.size());
                const auto her_delta = heron_at(c.delta);
                const double coef = c.alpha * std::sin(kPi * lam) / (2.0 * kPi);
                for (std::size_t i = 0; i < probes.size(); ++i)
                    reverse[i] = her_delta[i] - coef * jv[i];
                rep.record("fn_heinz_entropy_reverse", cp, worst_le(reverse, hz), cfg.func_tol);

                for (double p : cfg.p_grid) {
                    const double g = gamma_p(w, p).gamma;
                    CaseParams cpp;
                    cpp.with_dim(dim)
                        .with_seed(static_cast<long long>(sa))
                        .with_lambda(lam)
                        .with_p(p);
                    rep.record("fn_heinz_below_harm_line", cpp, worst_le(hz, ell_at(g)),
                               cfg.func_tol);
                    rep.record("fn_harm_line_below_heron_line", cpp,
                               worst_le(ell_at(g), heron_at(g)), cfg.func_tol);
                    rep.record("fn_heron_line_below_arith_half", cpp,
                               worst_le(heron_at(g), ari_half), cfg.func_tol);
                }

                // Agreement with the exact matrix route at the same probes.
                std::vector<double> sharp_vals(probes.size()), heinz_vals(probes.size()),
                    heron_vals(probes.size());
                const SymMatrix sharp_op = op_mean(A, B, w, OpMeanKind::sharp).sym();
                const SymMatrix heinz_mat = heinz_op(A, B, w).sym();
                const SymMatrix heron_mat = heron_op(A, B, w).sym();
                for (std::size_t i = 0; i < probes.size(); ++i) {
                    sharp_vals[i] = sym_quad_at(sharp_op, probes[i]);
                    heinz_vals[i] = sym_quad_at(heinz_mat, probes[i]);
                    heron_vals[i] = sym_quad_at(heron_mat, probes[i]);
                }
                rep.record("fn_bridge_geom", cp, worst_eq(geo, sharp_vals), cfg.func_tol);
                rep.record("fn_bridge_heinz", cp, worst_eq(hz, heinz_vals), cfg.func_tol);
                rep.record("fn_bridge_heron", cp, worst_eq(her, heron_vals), cfg.func_tol);

                const IdentityResiduals ir = identity_residuals(qp, w, probes, cfg.nodes);
                rep.record("fn_identity_agm_gap", cp, ir.agm_gap, cfg.func_tol);
                rep.record("fn_identity_agm_gap_half", cp, ir.agm_gap_half, cfg.func_tol);
                rep.record("fn_identity_heinz_gap", cp, ir.heinz_gap, cfg.func_tol);
                rep.record("fn_identity_entropy_rep", cp, ir.entropy_rep, cfg.func_tol);
            }
        }
    }
}

// Residual of l <= r over the indices where both samples are finite.  A
// difference against an infinite sample carries no order information, so
// those probes are skipped rather than compared.
double grid_worst_le(const GridFn& l, const GridFn& r) {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < l.size(); ++i) {
        if (!l[i].is_finite() || !r[i].is_finite()) continue;
        m = std::max(m, res_le(l[i].value(), r[i].value()));
    }
    return m;
}

GridFn grid_combo(const GridFn& lo, const GridFn& hi, double mu) {
    std::vector<ExtReal> v;
    v.reserve(static_cast<std::size_t>(lo.size()));
    for (int i = 0; i < lo.size(); ++i)
        v.push_back(ext_add(ext_scale(1.0 - mu, lo[i]), ext_scale(mu, hi[i])));
    return GridFn(lo.lo(), lo.hi(), std::move(v));
}

void run_grid_tier(const SweepConfig& cfg, Report& rep,
                   const std::function<const JacobiRule&(double)>& rule_for) {
    const int n = 257;
    std::vector<std::pair<int, GridPair>> cases;
    cases.emplace_back(1, GridPair(GridFn::sample(-4.0, 4.0, n,
                                                  [](double x) { return ExtReal(std::abs(x)); }),
                                   GridFn::sample(-4.0, 4.0, n, [](double x) {
                                       return ExtReal(0.5 * x * x);
                                   })));
    cases.emplace_back(2, GridPair(GridFn::sample(-2.0, 2.0, n,
                                                  [](double x) { return ExtReal(std::exp(x)); }),
                                   GridFn::sample(-2.0, 2.0, n, [](double x) {
                                       return ExtReal(x * x * x * x);
                                   })));
    cases.emplace_back(
        3, GridPair(GridFn::sample(-3.0, 3.0, n,
                                   [](double x) {
                                       return (x >= -1.0 && x <= 2.0) ? ExtReal(0.5 * x * x)
                                                                      : ExtReal::inf();
                                   }),
                    GridFn::sample(-3.0, 3.0, n, [](double x) {
                        return (x >= -2.0 && x <= 1.0) ? ExtReal(0.5 * (x - 1.0) * (x - 1.0))
                                                       : ExtReal::inf();
                    })));

    for (const auto& [index, gp] : cases) {
        const GridFn har_half = harm_fn(gp, Weight(0.5));
        const GridFn ari_half = arith_fn(gp, Weight(0.5));
        const GridFn geo_half = geom_fn(gp, Weight(0.5), rule_for(0.5));

        for (double lam : cfg.lambda_grid) {
            if (!interior(lam)) continue;
            const Weight w(lam);
            const double r = std::min(lam, 1.0 - lam);
            CaseParams cp;
            cp.with_seed(index).with_lambda(lam);

            const GridFn geo = geom_fn(gp, w, rule_for(lam));
            const GridFn ari = arith_fn(gp, w);
            const GridFn har = harm_fn(gp, w);
            rep.record("grid_harm_below_geom", cp, grid_worst_le(har, geo), cfg.tol);
            rep.record("grid_geom_below_arith", cp, grid_worst_le(geo, ari), cfg.tol);

            const GridFn her = grid_combo(geo_half, ari_half, lam);
            rep.record("grid_heron_weight_monotone_lo", cp,
                       grid_worst_le(grid_combo(geo_half, ari_half, r), her), cfg.tol);
            rep.record("grid_heron_weight_monotone_hi", cp,
                       grid_worst_le(her, grid_combo(geo_half, ari_half, 1.0 - r)), cfg.tol);

            double gap_lo = -std::numeric_limits<double>::infinity();
            double gap_hi = gap_lo;
            for (int i = 0; i < ari.size(); ++i) {
                if (!ari[i].is_finite() || !ari_half[i].is_finite()) continue;
                const double dl = ari[i].value() - har[i].value();
                const double dh = ari_half[i].value() - har_half[i].value();
                gap_lo = std::max(gap_lo, res_le(2.0 * r * dh, dl));
                gap_hi = std::max(gap_hi, res_le(dl, 2.0 * (1.0 - r) * dh));
            }
            rep.record("grid_harm_gap_lower", cp, gap_lo, cfg.tol);
            rep.record("grid_harm_gap_upper", cp, gap_hi, cfg.tol);

            const GridFn th = theta_fn(gp, w);
            const GridFn hz = heinz_fn(gp, w, rule_for(lam), rule_for(1.0 - lam));
            rep.record("grid_harm_below_theta", cp, grid_worst_le(har_half, th), cfg.tol);
            rep.record("grid_theta_below_heinz", cp, grid_worst_le(th, hz), cfg.tol);
            rep.record("grid_heinz_below_arith", cp, grid_worst_le(hz, ari_half), cfg.tol);
        }
    }
}

} // namespace

Report run_functional_suite(const SweepConfig& cfg) {
    cfg.validate();
    Stopwatch clock;
    Report rep("functional", cfg.echo());

    std::map<double, JacobiRule> rules;
    const auto rule_for = [&](double lam) -> const JacobiRule& {
        auto it = rules.find(lam);
        if (it == rules.end()) it = rules.emplace(lam, jacobi_rule(lam, cfg.nodes)).first;
        return it->second;
    };

    run_quadratic_tier(cfg, rep, rule_for);
    run_grid_tier(cfg, rep, rule_for);

    rep.set_elapsed(clock.seconds());
    return rep;
}

Report reproduce_counterexamples() {
    Stopwatch clock;
    Report rep("counterexamples", {});

    const Weight w9(0.9);
    struct Pin {
        const char* value_id;
        const char* sign_id;
        double t;
        double quoted;
    };
    const Pin pins[] = {
        {"comparison_crossover_left", "comparison_negative_left", 0.75, -0.0000722089},
        {"comparison_crossover_right", "comparison_negative_right", 1.5, -0.000197205},
    };
    for (const Pin& pin : pins) {
        const double val = comparison_fns(pin.t, w9).f;
        CaseParams cp;
        cp.with_lambda(0.9).with_t(pin.t);
        rep.record(pin.value_id, cp, std::abs(val - pin.quoted) / std::abs(pin.quoted), 1e-4);
        rep.record(pin.sign_id, cp, val, 0.0);
    }

    // The weight-only coefficient that decides the large-|log t| behaviour
    // stays nonnegative on the whole weight interval.
    double min_h = std::numeric_limits<double>::infinity();
    double arg_min = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double lam = static_cast<double>(i) / 1000.0;
        const double h = comparison_fns(1.0, Weight(lam)).h;
        if (h < min_h) {
            min_h = h;
            arg_min = lam;
        }
    }
    CaseParams cp;
    cp.with_lambda(arg_min);
    rep.record("comparison_h_nonnegative", cp, -min_h, 1e-15);

    rep.set_elapsed(clock.seconds());
    return rep;
}

Report search_open_inequality(const SweepConfig& cfg) {
    cfg.validate();
    Stopwatch clock;
    Report rep("search_open", cfg.echo());

    const auto value_at = [](double t, double lam) {
        const ComparisonValues v = comparison_fns(t, Weight(lam));
        return v.alpha_t + v.beta_t * v.beta_t;
    };

    // Dense scan of the conjectured-nonnegative surface.
    const int nt = 2000, nl = 500;
    std::vector<double> grid(static_cast<std::size_t>(nt) * nl);
    for (int i = 0; i < nt; ++i) {
        const double t = std::pow(10.0, -3.0 + 6.0 * i / (nt - 1));
        for (int j = 0; j < nl; ++j)
            grid[static_cast<std::size_t>(i) * nl + j] = value_at(t, 0.5 * j / (nl - 1));
    }

    std::vector<std::size_t> order(grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return grid[x] < grid[y] || (grid[x] == grid[y] && x < y);
    });

    // The best few well-separated grid points seed the local descent.
    std::vector<std::pair<int, int>> starts;
    for (std::size_t idx : order) {
        const int i = static_cast<int>(idx / nl), j = static_cast<int>(idx % nl);
        bool apart = true;
        for (const auto& [si, sj] : starts)
            if (std::abs(si - i) <= 25 && std::abs(sj - j) <= 12) apart = false;
        if (apart) starts.emplace_back(i, j);
        if (starts.size() == 5) break;
    }

    const double best_grid = grid[order.front()];
    {
        const int i = static_cast<int>(order.front() / nl), j = static_cast<int>(order.front() % nl);
        CaseParams cp;
        cp.with_t(std::pow(10.0, -3.0 + 6.0 * i / (nt - 1))).with_lambda(0.5 * j / (nl - 1));
        rep.record("open_gap_grid_min", cp, -best_grid, 1e-9);
    }

    // Coordinate descent, multiplicative in t and additive in the weight,
    // halving both steps whenever no neighbour improves.
    const auto refine = [&](double t0, double l0) {
        double lt = std::log(t0), lam = l0;
        double cur = value_at(std::exp(lt), lam);
        double st = 0.25, sl = 0.02;
        const double lt_min = std::log(1e-6), lt_max = std::log(1e6);
        for (int it = 0; it < 400 && (st > 1e-14 || sl > 1e-14); ++it) {
            bool moved = false;
            for (double cand : {lt - st, lt + st}) {
                const double c = std::clamp(cand, lt_min, lt_max);
                const double v = value_at(std::exp(c), lam);
                if (v < cur) {
                    cur = v;
                    lt = c;
                    moved = true;
                }
            }
            for (double cand : {lam - sl, lam + sl}) {
                const double c = std::clamp(cand, 0.0, 0.5);
                const double v = value_at(std::exp(lt), c);
                if (v < cur) {
                    cur = v;
                    lam = c;
                    moved = true;
                }
            }
            if (!moved) {
                st *= 0.5;
                sl *= 0.5;
            }
        }
        return std::tuple<double, double, double>(cur, std::exp(lt), lam);
    };

    double best_val = best_grid, best_t = 0.0, best_lam = 0.0;
    {
        const int i = static_cast<int>(order.front() / nl), j = static_cast<int>(order.front() % nl);
        best_t = std::pow(10.0, -3.0 + 6.0 * i / (nt - 1));
        best_lam = 0.5 * j / (nl - 1);
    }
    for (const auto& [i, j] : starts) {
        const auto [val, t, lam] =
            refine(std::pow(10.0, -3.0 + 6.0 * i / (nt - 1)), 0.5 * j / (nl - 1));
        if (val < best_val) {
            best_val = val;
            best_t = t;
            best_lam = lam;
        }
    }
    CaseParams cp;
    cp.with_t(best_t).with_lambda(best_lam);
    rep.record("open_gap_refined_min", cp, -best_val, 1e-9);
    rep.set_note("numerical evidence only: a nonnegative minimum is not a proof");

    rep.set_elapsed(clock.seconds());
    return rep;
}

} // namespace meanlab
