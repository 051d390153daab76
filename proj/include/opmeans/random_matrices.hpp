#pragma once

#include <cmath>
#include <vector>

#include "opmeans/complex_matrix.hpp"
#include "opmeans/eigen_jacobi.hpp"
#include "opmeans/rng.hpp"

namespace opmeans {

namespace detail {

// modified Gram-Schmidt with one reorthogonalization pass
inline void orthonormalize_columns(Matrix& g, Rng& rng) {
    const std::size_t n = g.dim();
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < j; ++i) {
                cdouble dot = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    dot += std::conj(g(k, i)) * g(k, j);
                for (std::size_t k = 0; k < n; ++k) g(k, j) -= dot * g(k, i);
            }
        double norm = 0.0;
        for (std::size_t k = 0; k < n; ++k) norm += std::norm(g(k, j));
        norm = std::sqrt(norm);
        if (norm < 1e-8) {
            // vanishing column (vanishingly rare): redraw and redo
            for (std::size_t k = 0; k < n; ++k)
                g(k, j) = cdouble(rng.next_normal(), rng.next_normal());
            --j;
            continue;
        }
        for (std::size_t k = 0; k < n; ++k) g(k, j) /= norm;
    }
}

}

// Haar-like random unitary: complex Gaussian entries, orthonormalized.
// Deterministic per (dim, seed).
inline Matrix random_unitary(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    Matrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = cdouble(rng.next_normal(), rng.next_normal());
    detail::orthonormalize_columns(g, rng);
    return g;
}

// Random Hermitian positive definite matrix with spectrum in [m, M], as an
// explicit decomposition. Eigenvalues are uniform in [m, M]; for dim >= 2 one
// eigenvalue is pinned to m and one to M so the spectral bounds are attained.
inline SpectralDecomposition random_hpd_decomposition(std::size_t dim, double m,
                                                      double M,
                                                      std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("random_hpd: dim must be >= 1");
    if (!(0.0 < m && m <= M))
        throw std::invalid_argument("random_hpd: need 0 < m <= M");
    Rng rng(seed);
    std::vector<double> ev(dim);
    for (double& v : ev) v = rng.uniform(m, M);
    if (dim >= 2) {
        ev.front() = m;
        ev.back() = M;
    }
    std::sort(ev.begin(), ev.end());
    Matrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = cdouble(rng.next_normal(), rng.next_normal());
    detail::orthonormalize_columns(g, rng);
    return {std::move(ev), std::move(g)};
}

inline HermitianMatrix random_hpd(std::size_t dim, double m, double M,
                                  std::uint64_t seed) {
    return random_hpd_decomposition(dim, m, M, seed).reconstruct();
}

// Random Hermitian matrix with standard Gaussian entry scale (test ensembles).
inline HermitianMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    Matrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = cdouble(rng.next_normal(), rng.next_normal());
    return HermitianMatrix::hermitize(g);
}

}
