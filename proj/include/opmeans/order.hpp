#pragma once

#include <cmath>

#include "opmeans/eigen_jacobi.hpp"
#include "opmeans/tolerance.hpp"

namespace opmeans {

struct PsdVerdict {
    bool positive_semidefinite = false;
    double min_eigenvalue = 0.0;
};

// A is PSD when its smallest eigenvalue is >= -eps_psd * max(1, |A|_F).
inline PsdVerdict is_positive_semidefinite(const HermitianMatrix& a,
                                           const ToleranceConfig& tol = {}) {
    if (a.dim() == 0) return {true, 0.0};
    const double min_eig = eig_hermitian(a).min_eigenvalue();
    const double floor = -tol.eps_psd * std::max(1.0, a.frobenius_norm());
    return {min_eig >= floor, min_eig};
}

struct LoewnerVerdict {
    bool holds = false;
    double slack = 0.0;  // min eigenvalue of B - A
};

// Loewner order test A <= B, reporting the slack min_eig(B - A).
inline LoewnerVerdict loewner_leq(const HermitianMatrix& a,
                                  const HermitianMatrix& b,
                                  const ToleranceConfig& tol = {}) {
    if (a.dim() != b.dim()) throw DimensionMismatchError(a.dim(), b.dim());
    const HermitianMatrix diff = b - a;
    PsdVerdict v = is_positive_semidefinite(diff, tol);
    return {v.positive_semidefinite, v.min_eigenvalue};
}

// X* A X (Hermitian by construction)
inline HermitianMatrix congruence(const HermitianMatrix& a, const Matrix& x) {
    if (a.dim() != x.dim()) throw DimensionMismatchError(a.dim(), x.dim());
    return HermitianMatrix::hermitize(x.adjoint() * a.matrix() * x);
}

}
