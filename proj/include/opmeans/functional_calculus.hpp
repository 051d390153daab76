#pragma once

#include <cmath>

#include "opmeans/eigen_jacobi.hpp"
#include "opmeans/scalar_function.hpp"
#include "opmeans/tolerance.hpp"

namespace opmeans {

namespace detail {

// strict positive-definiteness gate shared by sqrt/inverse style operations
inline SpectralDecomposition require_hpd(const HermitianMatrix& a,
                                         const char* op,
                                         const ToleranceConfig& tol) {
    SpectralDecomposition d = eig_hermitian(a);
    const double floor = tol.eps_psd * std::max(1.0, a.frobenius_norm());
    if (a.dim() == 0 || d.min_eigenvalue() <= floor)
        throw PositivityError(op, a.dim() ? d.min_eigenvalue() : 0.0);
    return d;
}

}

// f(A) = U diag(f(eigenvalues)) U*. Eigenvalues must lie in f's domain.
inline HermitianMatrix apply_scalar_function(const HermitianMatrix& a,
                                             const ScalarFunction& f) {
    SpectralDecomposition d = eig_hermitian(a);
    for (double ev : d.eigenvalues)
        if (!f.in_domain(ev)) throw DomainError(f.id(), ev);
    return d.apply([&](double x) { return f(x); });
}

inline HermitianMatrix matrix_sqrt(const HermitianMatrix& a,
                                   const ToleranceConfig& tol = {}) {
    return detail::require_hpd(a, "matrix_sqrt", tol).apply([](double x) {
        return std::sqrt(x);
    });
}

inline HermitianMatrix matrix_inv_sqrt(const HermitianMatrix& a,
                                       const ToleranceConfig& tol = {}) {
    return detail::require_hpd(a, "matrix_inv_sqrt", tol).apply([](double x) {
        return 1.0 / std::sqrt(x);
    });
}

inline HermitianMatrix matrix_inverse(const HermitianMatrix& a,
                                      const ToleranceConfig& tol = {}) {
    return detail::require_hpd(a, "matrix_inverse", tol).apply([](double x) {
        return 1.0 / x;
    });
}

inline HermitianMatrix matrix_pow(const HermitianMatrix& a, double p,
                                  const ToleranceConfig& tol = {}) {
    return detail::require_hpd(a, "matrix_pow", tol).apply([p](double x) {
        return std::pow(x, p);
    });
}

}
