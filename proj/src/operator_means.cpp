#include "meanlab/operator_means.hpp"

#include <cmath>

#include "meanlab/quadrature.hpp"

namespace meanlab {

namespace {

SymMatrix symmetrized(Matrix m, double tol = 1e-9) {
    return SymMatrix(std::move(m), tol);
}

// A^(1/2) M^power A^(1/2) where M = A^(-1/2) B A^(-1/2); the building block
// of the geometric mean.
SpdMatrix sharp_power(const SpdMatrix& a, const SpdMatrix& b, double power) {
    EigenDecomp ea = sym_eig(a.sym());
    const int n = a.dim();
    Matrix half = ea.vectors, half_inv = ea.vectors;
    for (int j = 0; j < n; ++j) {
        const double ev = ea.values[static_cast<size_t>(j)];
        if (!(ev > 0.0)) throw EigenFailure("sharp: nonpositive eigenvalue");
        const double s = std::sqrt(ev);
        for (int i = 0; i < n; ++i) {
            half(i, j) = ea.vectors(i, j) * s;
            half_inv(i, j) = ea.vectors(i, j) / s;
        }
    }
    const Matrix vt = transpose(ea.vectors);
    const Matrix a_half = matmul(half, vt);
    const Matrix a_half_inv = matmul(half_inv, vt);

    const SymMatrix mid = symmetrized(matmul(a_half_inv, matmul(b.raw(), a_half_inv)));
    EigenDecomp em = sym_eig(mid);
    Matrix pm = em.vectors;
    for (int j = 0; j < n; ++j) {
        const double ev = em.values[static_cast<size_t>(j)];
        if (!(ev > 0.0)) throw EigenFailure("sharp: congruence lost positivity");
        const double f = std::pow(ev, power);
        for (int i = 0; i < n; ++i) pm(i, j) *= f;
    }
    const Matrix mid_pow = matmul(pm, transpose(em.vectors));
    return SpdMatrix(symmetrized(matmul(a_half, matmul(mid_pow, a_half))));
}

} // namespace

SpdMatrix op_mean(const SpdMatrix& a, const SpdMatrix& b, const Weight& t, OpMeanKind kind) {
    if (a.dim() != b.dim()) throw DimMismatch(a.dim(), b.dim());
    if (t.lambda == 0.0) return a;
    if (t.lambda == 1.0) return b;
    const double l = t.lambda;

    switch (kind) {
        case OpMeanKind::nabla: {
            Matrix out(a.dim());
            for (size_t i = 0; i < out.a.size(); ++i)
                out.a[i] = (1.0 - l) * a.raw().a[i] + l * b.raw().a[i];
            return SpdMatrix(std::move(out));
        }
        case OpMeanKind::sharp:
            return sharp_power(a, b, l);
        case OpMeanKind::harm: {
            const SpdMatrix ia = spd_inverse(a);
            const SpdMatrix ib = spd_inverse(b);
            Matrix combo(a.dim());
            for (size_t i = 0; i < combo.a.size(); ++i)
                combo.a[i] = (1.0 - l) * ia.raw().a[i] + l * ib.raw().a[i];
            return spd_inverse(SpdMatrix(std::move(combo)));
        }
    }
    throw Error("unknown operator mean kind");
}

SpdMatrix heron_op(const SpdMatrix& a, const SpdMatrix& b, const Weight& lam) {
    const Weight half(0.5);
    const SpdMatrix geo = op_mean(a, b, half, OpMeanKind::sharp);
    const SpdMatrix ari = op_mean(a, b, half, OpMeanKind::nabla);
    Matrix out(a.dim());
    for (size_t i = 0; i < out.a.size(); ++i)
        out.a[i] = (1.0 - lam.lambda) * geo.raw().a[i] + lam.lambda * ari.raw().a[i];
    return SpdMatrix(std::move(out));
}

SpdMatrix heinz_op(const SpdMatrix& a, const SpdMatrix& b, const Weight& lam) {
    const SpdMatrix s1 = op_mean(a, b, lam, OpMeanKind::sharp);
    const SpdMatrix s2 = op_mean(a, b, lam.swap(), OpMeanKind::sharp);
    Matrix out(a.dim());
    for (size_t i = 0; i < out.a.size(); ++i)
        out.a[i] = 0.5 * (s1.raw().a[i] + s2.raw().a[i]);
    return SpdMatrix(std::move(out));
}

SpdMatrix ell_op(const SpdMatrix& a, const SpdMatrix& b, const Weight& mu) {
    const Weight half(0.5);
    const SpdMatrix har = op_mean(a, b, half, OpMeanKind::harm);
    const SpdMatrix ari = op_mean(a, b, half, OpMeanKind::nabla);
    Matrix out(a.dim());
    for (size_t i = 0; i < out.a.size(); ++i)
        out.a[i] = (1.0 - mu.lambda) * har.raw().a[i] + mu.lambda * ari.raw().a[i];
    return SpdMatrix(std::move(out));
}

SymMatrix rel_entropy(const SpdMatrix& a, const SpdMatrix& b) {
    if (a.dim() != b.dim()) throw DimMismatch(a.dim(), b.dim());
    EigenDecomp ea = sym_eig(a.sym());
    const int n = a.dim();
    Matrix half = ea.vectors, half_inv = ea.vectors;
    for (int j = 0; j < n; ++j) {
        const double s = std::sqrt(ea.values[static_cast<size_t>(j)]);
        for (int i = 0; i < n; ++i) {
            half(i, j) = ea.vectors(i, j) * s;
            half_inv(i, j) = ea.vectors(i, j) / s;
        }
    }
    const Matrix vt = transpose(ea.vectors);
    const Matrix a_half = matmul(half, vt);
    const Matrix a_half_inv = matmul(half_inv, vt);

    const SymMatrix mid = symmetrized(matmul(a_half_inv, matmul(b.raw(), a_half_inv)));
    EigenDecomp em = sym_eig(mid);
    Matrix lm = em.vectors;
    for (int j = 0; j < n; ++j) {
        const double ev = em.values[static_cast<size_t>(j)];
        if (!(ev > 0.0)) throw EigenFailure("entropy: congruence lost positivity");
        const double f = std::log(ev);
        for (int i = 0; i < n; ++i) lm(i, j) *= f;
    }
    const Matrix log_mid = matmul(lm, transpose(em.vectors));
    return symmetrized(matmul(a_half, matmul(log_mid, a_half)));
}

SymMatrix j_closed(const SpdMatrix& a, const SpdMatrix& b) {
    if (a.dim() != b.dim()) throw DimMismatch(a.dim(), b.dim());
    const SymMatrix s = rel_entropy(a, b);
    Matrix diff(a.dim());
    for (size_t i = 0; i < diff.a.size(); ++i) diff.a[i] = b.raw().a[i] - a.raw().a[i];
    const SpdMatrix ia = spd_inverse(a);
    const Matrix raw = matmul(diff, matmul(ia.raw(), s.raw()));
    // The closed form is symmetric only up to roundoff; store (M + M^T)/2.
    Matrix sym(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) sym(i, j) = 0.5 * (raw(i, j) + raw(j, i));
    return SymMatrix(std::move(sym));
}

SymMatrix j_quadrature(const SpdMatrix& a, const SpdMatrix& b, int n) {
    if (a.dim() != b.dim()) throw DimMismatch(a.dim(), b.dim());
    const LegendreRule& rule = legendre_rule(n);
    Matrix acc(a.dim());
    for (int k = 0; k < rule.size(); ++k) {
        const double t = 0.5 * (1.0 + rule.nodes[static_cast<size_t>(k)]);
        const double w = 0.5 * rule.weights[static_cast<size_t>(k)];
        const Weight wt(t);
        const SpdMatrix na = op_mean(a, b, wt, OpMeanKind::nabla);
        const SpdMatrix ha = op_mean(a, b, wt, OpMeanKind::harm);
        const double f = w / (t * (1.0 - t));
        for (size_t i = 0; i < acc.a.size(); ++i)
            acc.a[i] += f * (na.raw().a[i] - ha.raw().a[i]);
    }
    return symmetrized(std::move(acc));
}

LoewnerWitness loewner_leq(const SymMatrix& t, const SymMatrix& s, double tol) {
    if (t.dim() != s.dim()) throw DimMismatch(t.dim(), s.dim());
    const SymMatrix diff = s.sub(t);
    EigenDecomp e = sym_eig(diff);
    const double lo = e.values.front(), hi = e.values.back();
    const double spec = std::max(std::fabs(lo), std::fabs(hi));

    LoewnerWitness w;
    w.min_eigenvalue = lo;
    w.residual = -lo / (1.0 + spec);
    w.holds = w.residual <= tol;
    w.eigenvector.resize(static_cast<size_t>(t.dim()));
    for (int i = 0; i < t.dim(); ++i)
        w.eigenvector[static_cast<size_t>(i)] = e.vectors(i, 0);
    return w;
}

} // namespace meanlab
