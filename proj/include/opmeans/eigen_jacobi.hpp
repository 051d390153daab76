#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "opmeans/complex_matrix.hpp"
#include "opmeans/errors.hpp"
#include "opmeans/tolerance.hpp"

namespace opmeans {

// Result of diagonalizing a Hermitian matrix: A = U diag(eigenvalues) U*.
// Eigenvalues are ascending; column k of U is the eigenvector for
// eigenvalues[k].
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    Matrix unitary;

    std::size_t dim() const { return eigenvalues.size(); }

    double min_eigenvalue() const { return eigenvalues.front(); }
    double max_eigenvalue() const { return eigenvalues.back(); }

    // U diag(g(eigenvalues)) U*, exact Hermitian result
    template <typename G>
    HermitianMatrix apply(G&& g) const {
        const std::size_t n = dim();
        std::vector<double> f(n);
        for (std::size_t k = 0; k < n; ++k) f[k] = g(eigenvalues[k]);
        Matrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                cdouble s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += f[k] * unitary(i, k) * std::conj(unitary(j, k));
                r(i, j) = s;
                r(j, i) = std::conj(s);
            }
        return HermitianMatrix::hermitize(r);
    }

    HermitianMatrix reconstruct() const {
        return apply([](double x) { return x; });
    }

    // max |U*U - I| entry
    double orthonormality_defect() const {
        const std::size_t n = dim();
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                cdouble s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += std::conj(unitary(k, i)) * unitary(k, j);
                d = std::max(d, std::abs(s - (i == j ? 1.0 : 0.0)));
            }
        return d;
    }
};

namespace detail {

inline double off_diagonal_norm(const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i + 1; j < m.dim(); ++j) s += std::norm(m(i, j));
    return std::sqrt(2.0 * s);
}

}

// Cyclic Jacobi sweeps with complex rotations. Each rotation zeroes one
// off-diagonal pair; quadratic convergence sets in after a few sweeps.
inline SpectralDecomposition eig_hermitian(const HermitianMatrix& a) {
    const std::size_t n = a.dim();
    if (n == 0) return {{}, Matrix(0)};

    Matrix m = a.matrix();
    Matrix v = Matrix::identity(n);

    const double scale = std::max(m.frobenius_norm(), 1e-300);
    const double tol_off = 1e-14 * scale;
    const int max_sweeps = 60;

    int sweep = 0;
    double off = detail::off_diagonal_norm(m);
    while (off > tol_off) {
        if (++sweep > max_sweeps) throw ConvergenceError(off);
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = m(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const cdouble phase = apq / r;  // e^{i phi}
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                // smaller-magnitude root of t^2 - 2*tau*t - 1 = 0
                double t;
                if (tau >= 0.0)
                    t = -1.0 / (tau + std::sqrt(tau * tau + 1.0));
                else
                    t = 1.0 / (-tau + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cdouble se_pos = s * phase;             // s e^{i phi}
                const cdouble se_neg = s * std::conj(phase);  // s e^{-i phi}

                m(p, p) = app + t * r;
                m(q, q) = aqq - t * r;
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const cdouble mkp = m(k, p);
                    const cdouble mkq = m(k, q);
                    m(k, p) = c * mkp + se_neg * mkq;
                    m(k, q) = -se_pos * mkp + c * mkq;
                    m(p, k) = std::conj(m(k, p));
                    m(q, k) = std::conj(m(k, q));
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble vkp = v(k, p);
                    const cdouble vkq = v(k, q);
                    v(k, p) = c * vkp + se_neg * vkq;
                    v(k, q) = -se_pos * vkp + c * vkq;
                }
            }
        off = detail::off_diagonal_norm(m);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return m(i, i).real() < m(j, j).real();
    });

    SpectralDecomposition d;
    d.eigenvalues.resize(n);
    d.unitary = Matrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        d.eigenvalues[k] = m(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) d.unitary(i, k) = v(i, order[k]);
    }
    return d;
}

}
