#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "opmeans/means.hpp"

namespace opmeans {

// (1+x)^2 / (4x), x > 0. Invariant under x -> 1/x; equals 1 at x = 1.
inline double kantorovich(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("kantorovich: x must be > 0");
    return (1.0 + x) * (1.0 + x) / (4.0 * x);
}

// Specht ratio x^(1/(x-1)) / (e log x^(1/(x-1))), continued by 1 at x = 1.
// With r = log(x)/(x-1) this is exp(r-1)/r; near x = 1 both r-1 and log r
// cancel badly, so a series in u = x-1 takes over there.
inline double specht(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("specht: x must be > 0");
    const double u = x - 1.0;
    if (std::abs(u) < 1e-8) {
        // r - 1 = -u/2 + u^2/3 - u^3/4 + ...,  S = exp(d - log(1+d)) with
        // d = r - 1, so S = 1 + d^2/2 + O(d^3)
        const double d = u * (-0.5 + u * (1.0 / 3.0 - 0.25 * u));
        return 1.0 + 0.5 * d * d;
    }
    const double r = std::log(x) / u;
    return std::exp(r - 1.0) / r;
}

// f_{alpha,beta}(x) = ((1-alpha) + alpha x) / x^beta on (0, inf)
inline double f_alpha_beta(double x, Weight alpha, Weight beta) {
    if (!(x > 0.0)) throw std::invalid_argument("f_alpha_beta: x must be > 0");
    return ((1.0 - alpha.alpha) + alpha.alpha * x) / std::pow(x, beta.alpha);
}

// Location of the interior extremum of f_{alpha,beta}:
// x* = beta (1-alpha) / (alpha (1-beta)); none when alpha = 0 or beta = 1.
inline std::optional<double> critical_point(Weight alpha, Weight beta) {
    if (alpha.alpha == 0.0 || beta.alpha == 1.0) return std::nullopt;
    return beta.alpha * (1.0 - alpha.alpha) /
           (alpha.alpha * (1.0 - beta.alpha));
}

struct BoundParams {
    SandwichInterval interval;
    Weight alpha;
    Weight beta;
};

// Sharp multiplier lambda = max f_{alpha,beta} over {s, t}; this equals the
// supremum of f over [s, t] because the only interior extremum is a minimum.
inline double lambda_bound(const BoundParams& p) {
    return std::max(f_alpha_beta(p.interval.s, p.alpha, p.beta),
                    f_alpha_beta(p.interval.t, p.alpha, p.beta));
}

// Sharp multiplier mu: same extremal form evaluated on [1/t, 1/s].
inline double mu_bound(const BoundParams& p) {
    return lambda_bound({{1.0 / p.interval.t, 1.0 / p.interval.s}, p.alpha,
                         p.beta});
}

// gamma = max{S(s), S(t)}: weight-free envelope of lambda and mu at alpha=beta
inline double gamma_bound(const SandwichInterval& iv) {
    return std::max(specht(iv.s), specht(iv.t));
}

// lambda specialized to spectral bounds m, M (s = m/M, t = M/m)
inline double corollary_lambda(double m, double M, Weight alpha, Weight beta) {
    if (!(0.0 < m && m <= M))
        throw std::invalid_argument("corollary_lambda: need 0 < m <= M");
    return lambda_bound({{m / M, M / m}, alpha, beta});
}

// beta = 1/2 closed form: the max is the branch selected by alpha vs 1/2
inline double corollary26_lambda(double m, double M, Weight alpha) {
    if (!(0.0 < m && m <= M))
        throw std::invalid_argument("corollary26_lambda: need 0 < m <= M");
    const double root_h = std::sqrt(M / m);
    const double a = alpha.alpha;
    if (a >= 0.5) return (1.0 - a) / root_h + a * root_h;
    return (1.0 - a) * root_h + a / root_h;
}

}
