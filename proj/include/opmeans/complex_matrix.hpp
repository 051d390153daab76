#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "opmeans/errors.hpp"

namespace opmeans {

using cdouble = std::complex<double>;

// Dense square complex matrix, row-major, value semantics.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}

    Matrix(std::size_t n, std::initializer_list<cdouble> entries) : Matrix(n) {
        if (entries.size() != n * n)
            throw DimensionMismatchError(n * n, entries.size());
        std::size_t k = 0;
        for (cdouble v : entries) a_[k++] = v;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return n_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const {
        return a_[i * n_ + j];
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Matrix& operator*=(cdouble c) {
        for (auto& v : a_) v *= c;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(cdouble c, Matrix a) { return a *= c; }
    friend Matrix operator*(Matrix a, cdouble c) { return a *= c; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.check_same_dim(b);
        const std::size_t n = a.n_;
        Matrix c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cdouble aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    Matrix adjoint() const {
        Matrix m(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    // max |A - A*| entry
    double hermiticity_defect() const {
        double d = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                d = std::max(d,
                             std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

  private:
    void check_same_dim(const Matrix& o) const {
        if (o.n_ != n_) throw DimensionMismatchError(n_, o.n_);
    }

    std::size_t n_ = 0;
    std::vector<cdouble> a_;
};

// Hermitian matrix: entry (j,i) is stored as the exact conjugate of (i,j) and
// the diagonal is exactly real. Build through the factories below.
class HermitianMatrix {
  public:
    HermitianMatrix() = default;

    // Symmetrize (M + M*)/2 and store with exact Hermitian structure.
    static HermitianMatrix hermitize(const Matrix& m) {
        HermitianMatrix h;
        h.m_ = Matrix(m.dim());
        for (std::size_t i = 0; i < m.dim(); ++i) {
            h.m_(i, i) = cdouble(m(i, i).real(), 0.0);
            for (std::size_t j = i + 1; j < m.dim(); ++j) {
                const cdouble v = 0.5 * (m(i, j) + std::conj(m(j, i)));
                h.m_(i, j) = v;
                h.m_(j, i) = std::conj(v);
            }
        }
        return h;
    }

    // Like hermitize but rejects matrices that are not Hermitian within
    // tol * max(1, |M|_F).
    static HermitianMatrix require_hermitian(const Matrix& m,
                                             double tol = 1e-12) {
        const double scale = std::max(1.0, m.frobenius_norm());
        if (m.hermiticity_defect() > tol * scale)
            throw ParseError("matrix is not Hermitian (defect " +
                             std::to_string(m.hermiticity_defect()) + ")");
        return hermitize(m);
    }

    static HermitianMatrix diagonal(const std::vector<double>& d) {
        Matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return hermitize(m);
    }

    static HermitianMatrix identity(std::size_t n) {
        return hermitize(Matrix::identity(n));
    }

    std::size_t dim() const { return m_.dim(); }
    const cdouble& operator()(std::size_t i, std::size_t j) const {
        return m_(i, j);
    }
    const Matrix& matrix() const { return m_; }
    double frobenius_norm() const { return m_.frobenius_norm(); }

    HermitianMatrix& operator+=(const HermitianMatrix& o) {
        m_ += o.m_;
        return *this;
    }
    HermitianMatrix& operator-=(const HermitianMatrix& o) {
        m_ -= o.m_;
        return *this;
    }
    HermitianMatrix& operator*=(double c) {
        m_ *= cdouble(c, 0.0);
        return *this;
    }

    friend HermitianMatrix operator+(HermitianMatrix a,
                                     const HermitianMatrix& b) {
        return a += b;
    }
    friend HermitianMatrix operator-(HermitianMatrix a,
                                     const HermitianMatrix& b) {
        return a -= b;
    }
    friend HermitianMatrix operator*(double c, HermitianMatrix a) {
        return a *= c;
    }

  private:
    Matrix m_;
};

}
