#include "meanlab/spd_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace meanlab {

Matrix Matrix::identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix matmul(const Matrix& x, const Matrix& y) {
    if (x.n != y.n) throw DimMismatch(x.n, y.n);
    Matrix out(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const double xik = x(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < x.n; ++j) out(i, j) += xik * y(k, j);
        }
    return out;
}

Matrix transpose(const Matrix& x) {
    Matrix out(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) out(j, i) = x(i, j);
    return out;
}

std::vector<double> matvec(const Matrix& x, const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != x.n) throw DimMismatch(x.n, static_cast<int>(v.size()));
    std::vector<double> out(static_cast<size_t>(x.n), 0.0);
    for (int i = 0; i < x.n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < x.n; ++j) acc += x(i, j) * v[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

SymMatrix::SymMatrix(Matrix m, double rel_tol) : m_(std::move(m)) {
    if (m_.n < 1) throw Error("matrix must have positive dimension");
    double scale = 0.0, worst = 0.0;
    for (int i = 0; i < m_.n; ++i)
        for (int j = 0; j < m_.n; ++j) {
            scale = std::max(scale, std::fabs(m_(i, j)));
            worst = std::max(worst, std::fabs(m_(i, j) - m_(j, i)));
        }
    if (worst > rel_tol * std::max(scale, 1.0))
        throw Error("matrix is not symmetric: max asymmetry " + std::to_string(worst));
    for (int i = 0; i < m_.n; ++i)
        for (int j = i + 1; j < m_.n; ++j) {
            const double v = 0.5 * (m_(i, j) + m_(j, i));
            m_(i, j) = v;
            m_(j, i) = v;
        }
}

SymMatrix SymMatrix::add(const SymMatrix& other) const {
    if (dim() != other.dim()) throw DimMismatch(dim(), other.dim());
    Matrix out = m_;
    for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += other.m_.a[i];
    return SymMatrix(std::move(out));
}

SymMatrix SymMatrix::sub(const SymMatrix& other) const {
    if (dim() != other.dim()) throw DimMismatch(dim(), other.dim());
    Matrix out = m_;
    for (size_t i = 0; i < out.a.size(); ++i) out.a[i] -= other.m_.a[i];
    return SymMatrix(std::move(out));
}

SymMatrix SymMatrix::scale(double c) const {
    Matrix out = m_;
    for (double& v : out.a) v *= c;
    return SymMatrix(std::move(out));
}

double SymMatrix::frobenius() const {
    double acc = 0.0;
    for (double v : m_.a) acc += v * v;
    return std::sqrt(acc);
}

void SymMatrix::write(std::ostream& os) const {
    char buf[32];
    for (int i = 0; i < dim(); ++i) {
        for (int j = 0; j < dim(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m_(i, j));
            os << (j ? " " : "") << buf;
        }
        os << '\n';
    }
}

SymMatrix SymMatrix::read(std::istream& is) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof()) throw Error("matrix parse error on row " + std::to_string(rows.size() + 1));
        rows.push_back(std::move(row));
    }
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw Error("matrix parse error: empty input");
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n)
            throw Error("matrix parse error: row " + std::to_string(i + 1) + " has wrong length");
        for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return SymMatrix(std::move(m));
}

EigenDecomp sym_eig(const SymMatrix& s) {
    const int n = s.dim();
    Matrix a = s.raw();
    Matrix v = Matrix::identity(n);

    if (n == 1) return {{a(0, 0)}, v};

    double norm = 0.0;
    for (double x : a.a) norm += x * x;
    norm = std::sqrt(norm);
    const double stop = (norm == 0.0) ? 0.0 : 1e-15 * norm;

    bool converged = false;
    for (int sweep = 0; sweep < 50 && !converged; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
        if (std::sqrt(off) <= stop) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;

                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
        if (std::sqrt(off) > stop) throw EigenFailure("Jacobi rotations: 50 sweeps exhausted");
    }

    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x) < a(y, y); });

    EigenDecomp out;
    out.values.resize(static_cast<size_t>(n));
    out.vectors = Matrix(n);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<size_t>(j)];
        out.values[static_cast<size_t>(j)] = a(src, src);
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, src);
    }
    return out;
}

namespace {

// Cholesky factorisation attempt; returns false when the matrix is not
// numerically positive definite.
bool cholesky(const Matrix& m, Matrix& lower) {
    const int n = m.n;
    lower = Matrix(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = m(i, j);
            for (int k = 0; k < j; ++k) sum -= lower(i, k) * lower(j, k);
            if (i == j) {
                if (!(sum > 0.0)) return false;
                lower(i, i) = std::sqrt(sum);
            } else {
                lower(i, j) = sum / lower(j, j);
            }
        }
    }
    return true;
}

} // namespace

SpdMatrix::SpdMatrix(SymMatrix s) : s_(std::move(s)) {
    Matrix l;
    if (!cholesky(s_.raw(), l))
        throw Error("matrix is not positive definite");
}

SymMatrix spectral_fn(const SpdMatrix& a, const std::function<double(double)>& phi) {
    EigenDecomp e = sym_eig(a.sym());
    const int n = a.dim();
    Matrix scaled = e.vectors;
    for (int j = 0; j < n; ++j) {
        const double f = phi(e.values[static_cast<size_t>(j)]);
        if (std::isnan(f) || std::isinf(f))
            throw EigenFailure("spectral function produced a non-finite value");
        for (int i = 0; i < n; ++i) scaled(i, j) *= f;
    }
    Matrix out = matmul(scaled, transpose(e.vectors));
    return SymMatrix(std::move(out), 1e-10);
}

SpdMatrix spectral_fn_pd(const SpdMatrix& a, const std::function<double(double)>& phi) {
    return SpdMatrix(spectral_fn(a, phi));
}

SpdMatrix spd_inverse(const SpdMatrix& a) {
    return spectral_fn_pd(a, [](double ev) { return 1.0 / ev; });
}

namespace {

// Householder QR; returns Q with the sign convention diag(R) > 0 so the
// factorisation (and hence the ensemble) is unique.
Matrix qr_orthonormal(const Matrix& g) {
    const int n = g.n;
    Matrix r = g;
    Matrix q = Matrix::identity(n);
    for (int k = 0; k < n; ++k) {
        double norm = 0.0;
        for (int i = k; i < n; ++i) norm += r(i, k) * r(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double alpha = (r(k, k) > 0.0) ? -norm : norm;
        std::vector<double> w(static_cast<size_t>(n), 0.0);
        w[static_cast<size_t>(k)] = r(k, k) - alpha;
        for (int i = k + 1; i < n; ++i) w[static_cast<size_t>(i)] = r(i, k);
        double wnorm2 = 0.0;
        for (double x : w) wnorm2 += x * x;
        if (wnorm2 == 0.0) continue;
        // r <- (I - 2 w w^T / |w|^2) r ; q <- q (I - 2 w w^T / |w|^2)
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int i = k; i < n; ++i) dot += w[static_cast<size_t>(i)] * r(i, j);
            const double f = 2.0 * dot / wnorm2;
            for (int i = k; i < n; ++i) r(i, j) -= f * w[static_cast<size_t>(i)];
        }
        for (int i = 0; i < n; ++i) {
            double dot = 0.0;
            for (int j = k; j < n; ++j) dot += q(i, j) * w[static_cast<size_t>(j)];
            const double f = 2.0 * dot / wnorm2;
            for (int j = k; j < n; ++j) q(i, j) -= f * w[static_cast<size_t>(j)];
        }
    }
    for (int k = 0; k < n; ++k) {
        if (r(k, k) < 0.0)
            for (int i = 0; i < n; ++i) q(i, k) = -q(i, k);
    }
    return q;
}

} // namespace

SpdMatrix random_spd(int dim, std::uint64_t seed, double log_lo, double log_hi) {
    if (dim < 1 || dim > 16) throw Error("random_spd supports dimensions 1..16");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = gauss(rng);
    Matrix q = qr_orthonormal(g);

    std::uniform_real_distribution<double> uni(log_lo, log_hi);
    std::vector<double> u(static_cast<size_t>(dim));
    for (double& x : u) x = std::exp(uni(rng));

    Matrix scaled = q;
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) scaled(i, j) *= u[static_cast<size_t>(j)];
    Matrix a = matmul(scaled, transpose(q));
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }
    return SpdMatrix(std::move(a));
}

std::vector<double> random_probe(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(static_cast<size_t>(dim));
    for (double& v : x) v = gauss(rng);
    return x;
}

} // namespace meanlab
