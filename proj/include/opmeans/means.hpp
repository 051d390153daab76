#pragma once

#include <cmath>

#include "opmeans/functional_calculus.hpp"
#include "opmeans/order.hpp"

namespace opmeans {

// mean weight in [0, 1]
struct Weight {
    Weight(double a) : alpha(a) {  // NOLINT: implicit by design
        if (!(a >= 0.0 && a <= 1.0))
            throw std::invalid_argument("weight must lie in [0, 1]");
    }
    double alpha;
};

// interval [s, t] with 0 < s <= t, as in s*A <= B <= t*A
struct SandwichInterval {
    SandwichInterval(double s_, double t_) : s(s_), t(t_) {
        if (!(0.0 < s_ && s_ <= t_))
            throw std::invalid_argument("sandwich interval needs 0 < s <= t");
    }
    double s;
    double t;
};

// Shared decomposition for the operator-perspective family
// A # B = sqrt(A) f(inv_sqrt(A) B inv_sqrt(A)) sqrt(A): computing it once
// serves every mean of the pair plus the tight sandwich interval.
class PairContext {
  public:
    PairContext(const HermitianMatrix& a, const HermitianMatrix& b,
                const ToleranceConfig& tol = {})
        : PairContext(detail::require_hpd(a, "pair context", tol), b, tol) {}

    PairContext(const SpectralDecomposition& eig_a, const HermitianMatrix& b,
                const ToleranceConfig& tol = {}) {
        sqrt_a_ = eig_a.apply([](double x) { return std::sqrt(x); });
        inv_sqrt_a_ = eig_a.apply([](double x) { return 1.0 / std::sqrt(x); });
        x_ = eig_hermitian(congruence(b, inv_sqrt_a_.matrix()));
        const double floor =
            tol.eps_psd * std::max(1.0, b.frobenius_norm());
        if (x_.min_eigenvalue() <= floor)
            throw PositivityError("pair context", x_.min_eigenvalue());
    }

    const HermitianMatrix& sqrt_a() const { return sqrt_a_; }
    const HermitianMatrix& inv_sqrt_a() const { return inv_sqrt_a_; }
    const SpectralDecomposition& relative_form() const { return x_; }

    SandwichInterval tight_interval() const {
        return {x_.min_eigenvalue(), x_.max_eigenvalue()};
    }

    // sqrt(A) g(X) sqrt(A) for scalar g evaluated on the relative form X
    template <typename G>
    HermitianMatrix transform(G&& g) const {
        return congruence(x_.apply(std::forward<G>(g)), sqrt_a_.matrix());
    }

  private:
    HermitianMatrix sqrt_a_;
    HermitianMatrix inv_sqrt_a_;
    SpectralDecomposition x_;
};

// (1-alpha) A + alpha B
inline HermitianMatrix arithmetic_mean(const HermitianMatrix& a,
                                       const HermitianMatrix& b, Weight w) {
    if (a.dim() != b.dim()) throw DimensionMismatchError(a.dim(), b.dim());
    return (1.0 - w.alpha) * a + w.alpha * b;
}

// ((1-alpha) A^-1 + alpha B^-1)^-1
inline HermitianMatrix harmonic_mean(const HermitianMatrix& a,
                                     const HermitianMatrix& b, Weight w,
                                     const ToleranceConfig& tol = {}) {
    if (a.dim() != b.dim()) throw DimensionMismatchError(a.dim(), b.dim());
    const HermitianMatrix mix = (1.0 - w.alpha) * matrix_inverse(a, tol) +
                                w.alpha * matrix_inverse(b, tol);
    return matrix_inverse(mix, tol);
}

// A^{1/2} (A^{-1/2} B A^{-1/2})^beta A^{1/2}
inline HermitianMatrix geometric_mean(const HermitianMatrix& a,
                                      const HermitianMatrix& b, Weight beta,
                                      const ToleranceConfig& tol = {}) {
    PairContext ctx(a, b, tol);
    const double p = beta.alpha;
    return ctx.transform([p](double x) { return std::pow(x, p); });
}

// General mean from a representing function f (positive, f(1) = 1):
// A sigma B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}
inline HermitianMatrix kubo_ando_mean(const HermitianMatrix& a,
                                      const HermitianMatrix& b,
                                      const ScalarFunction& f,
                                      const ToleranceConfig& tol = {}) {
    if (std::abs(f(1.0) - 1.0) > 1e-12)
        throw RepresentingFunctionError("representing function '" + f.id() +
                                        "' has f(1) = " +
                                        std::to_string(f(1.0)));
    PairContext ctx(a, b, tol);
    for (double ev : ctx.relative_form().eigenvalues)
        if (!(f(ev) > 0.0))
            throw RepresentingFunctionError(
                "representing function '" + f.id() +
                "' is not positive at probed eigenvalue " + std::to_string(ev));
    return ctx.transform([&](double x) { return f(x); });
}

// Tight [s, t] with s A <= B <= t A: extreme eigenvalues of the relative form.
inline SandwichInterval sandwich_interval(const HermitianMatrix& a,
                                          const HermitianMatrix& b,
                                          const ToleranceConfig& tol = {}) {
    return PairContext(a, b, tol).tight_interval();
}

}
