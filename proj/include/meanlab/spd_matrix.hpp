#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "meanlab/errors.hpp"

namespace meanlab {

// Dense square matrix, row-major.  Internal workhorse; no symmetry promise.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static Matrix identity(int dim);
};

Matrix matmul(const Matrix& x, const Matrix& y);
Matrix transpose(const Matrix& x);
std::vector<double> matvec(const Matrix& x, const std::vector<double>& v);

// Symmetric matrix.  Construction checks symmetry to 1e-13 relative and then
// stores the exactly symmetrised part (m + m^T)/2.
class SymMatrix {
  public:
    explicit SymMatrix(Matrix m, double rel_tol = 1e-13);
    static SymMatrix zero(int dim) { return SymMatrix(Matrix(dim)); }
    static SymMatrix identity(int dim) { return SymMatrix(Matrix::identity(dim)); }

    int dim() const { return m_.n; }
    double operator()(int i, int j) const { return m_(i, j); }
    const Matrix& raw() const { return m_; }

    SymMatrix add(const SymMatrix& other) const;
    SymMatrix sub(const SymMatrix& other) const;
    SymMatrix scale(double c) const;

    double frobenius() const;

    // Plain-text serialisation: one row per line, space-separated entries.
    void write(std::ostream& os) const;
    static SymMatrix read(std::istream& is);

  private:
    Matrix m_;
};

// Eigendecomposition of a symmetric matrix: values ascending, vectors in the
// corresponding columns of an orthogonal matrix.
struct EigenDecomp {
    std::vector<double> values;
    Matrix vectors;
};

// Cyclic Jacobi rotations; throws EigenFailure if 50 sweeps do not converge.
EigenDecomp sym_eig(const SymMatrix& s);

// Symmetric positive definite matrix: a SymMatrix whose eigenvalues are all
// strictly positive (validated by Cholesky at construction).
class SpdMatrix {
  public:
    explicit SpdMatrix(SymMatrix s);
    explicit SpdMatrix(Matrix m) : SpdMatrix(SymMatrix(std::move(m))) {}
    static SpdMatrix identity(int dim) { return SpdMatrix(SymMatrix::identity(dim)); }

    int dim() const { return s_.dim(); }
    double operator()(int i, int j) const { return s_(i, j); }
    const SymMatrix& sym() const { return s_; }
    const Matrix& raw() const { return s_.raw(); }

  private:
    SymMatrix s_;
};

// Q phi(diag) Q^T, symmetrised.  phi sees the eigenvalues of a.
SymMatrix spectral_fn(const SpdMatrix& a, const std::function<double(double)>& phi);

// Same congruence but guaranteed-positive phi, validated as SPD.
SpdMatrix spectral_fn_pd(const SpdMatrix& a, const std::function<double(double)>& phi);

// Spectral inverse.
SpdMatrix spd_inverse(const SpdMatrix& a);

// Q diag(exp(u)) Q^T with Q from the QR factorisation of a seeded Gaussian
// matrix and u uniform in [log_lo, log_hi].  Fully deterministic in the seed.
SpdMatrix random_spd(int dim, std::uint64_t seed, double log_lo = -3.0, double log_hi = 3.0);

// Deterministic standard-normal probe vector.
std::vector<double> random_probe(int dim, std::uint64_t seed);

} // namespace meanlab
