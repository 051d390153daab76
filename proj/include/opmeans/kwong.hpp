#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "opmeans/functional_calculus.hpp"
#include "opmeans/random_matrices.hpp"
#include "opmeans/scalar_function.hpp"

namespace opmeans {

// Distinct positive abscissae for difference-quotient matrices. Rejects
// points too close for the divided differences to be meaningful.
class SamplePoints {
  public:
    explicit SamplePoints(std::vector<double> pts) : pts_(std::move(pts)) {
        if (pts_.empty())
            throw std::invalid_argument("sample points: empty set");
        for (double x : pts_)
            if (!(std::isfinite(x) && x > 0.0))
                throw std::invalid_argument(
                    "sample points: entries must be finite and positive");
        std::vector<double> sorted = pts_;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i] - sorted[i - 1] <= 1e-12 * sorted[i])
                throw std::invalid_argument("sample points: entries too close");
    }

    const std::vector<double>& values() const { return pts_; }
    std::size_t size() const { return pts_.size(); }

  private:
    std::vector<double> pts_;
};

// [(f(x_i) + f(x_j)) / (x_i + x_j)]_{ij}
inline HermitianMatrix kwong_matrix(const ScalarFunction& f,
                                    const SamplePoints& pts) {
    const std::vector<double>& x = pts.values();
    const std::size_t n = x.size();
    std::vector<double> fx(n);
    for (std::size_t i = 0; i < n; ++i) fx[i] = f(x[i]);
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = (fx[i] + fx[j]) / (x[i] + x[j]);
            m(i, j) = v;
            m(j, i) = v;
        }
    return HermitianMatrix::hermitize(m);
}

// difference quotients, with f'(x_i) on the diagonal
inline HermitianMatrix loewner_matrix(const ScalarFunction& f,
                                      const SamplePoints& pts) {
    const std::vector<double>& x = pts.values();
    const std::size_t n = x.size();
    std::vector<double> fx(n);
    for (std::size_t i = 0; i < n; ++i) fx[i] = f(x[i]);
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = f.derivative(x[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = (fx[i] - fx[j]) / (x[i] - x[j]);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return HermitianMatrix::hermitize(m);
}

struct ClassificationWitness {
    int trial = 0;
    std::vector<double> points;
    HermitianMatrix matrix;
    double min_eigenvalue = 0.0;
};

// Outcome of a randomized positivity search. "Consistent" means no refuting
// matrix was found within the budget, never a proof.
struct ClassificationVerdict {
    std::string function_id;
    bool refuted = false;
    std::optional<ClassificationWitness> witness;
    int trials = 0;
    int skipped = 0;
    bool consistent() const { return !refuted; }
};

namespace detail {

// Point sets per trial: mostly log-uniform over [1e-3, 1e3], with every third
// trial a geometric progression (clustered spectra probe different failure
// modes than spread ones).
inline std::vector<double> classification_points(Rng& rng, int n_max,
                                                 int trial_index) {
    const int n =
        2 + (n_max > 2
                 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max - 1)))
                 : 0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<double> pts(static_cast<std::size_t>(n));
        if (trial_index % 3 == 2) {
            static constexpr double ratios[] = {1.1, 2.0, 10.0};
            const double ratio = ratios[rng.below(3)];
            double v = rng.log_uniform(1e-3, 1e3);
            for (double& p : pts) {
                p = v;
                v *= ratio;
            }
            if (pts.back() > 1e3) {
                const double scale = 1e3 / pts.back();
                for (double& p : pts) p *= scale;
            }
        } else {
            for (double& p : pts) p = rng.log_uniform(1e-3, 1e3);
        }
        std::sort(pts.begin(), pts.end());
        bool ok = true;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i] - pts[i - 1] <= 1e-12 * pts[i]) ok = false;
        if (ok) return pts;
    }
    throw Error("classification: failed to draw distinct sample points");
}

template <typename Builder>
inline ClassificationVerdict classify_with(const ScalarFunction& f,
                                           Builder&& build, int n_max,
                                           int trials, std::uint64_t seed,
                                           double tol) {
    if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    ClassificationVerdict v;
    v.function_id = f.id();
    v.trials = trials;
    for (int i = 0; i < trials; ++i) {
        Rng rng(trial_seed(seed, "points", static_cast<std::uint64_t>(i)));
        const std::vector<double> raw = classification_points(rng, n_max, i);
        HermitianMatrix k;
        try {
            k = build(f, SamplePoints(raw));
        } catch (const EvaluationError&) {
            ++v.skipped;
            continue;
        } catch (const DomainError&) {
            ++v.skipped;
            continue;
        }
        const double min_eig = eig_hermitian(k).min_eigenvalue();
        if (min_eig < -tol * std::max(1.0, k.frobenius_norm())) {
            v.refuted = true;
            v.witness = ClassificationWitness{i, raw, k, min_eig};
            break;
        }
    }
    return v;
}

}

// Search for a sample-point set whose Kwong matrix has a negative eigenvalue.
inline ClassificationVerdict classify_kwong(const ScalarFunction& f,
                                            int n_max = 8, int trials = 400,
                                            std::uint64_t seed = 42,
                                            double tol = 1e-9) {
    return detail::classify_with(
        f,
        [](const ScalarFunction& fn, const SamplePoints& p) {
            return kwong_matrix(fn, p);
        },
        n_max, trials, seed, tol);
}

// Same search against Loewner matrices (positivity there characterizes
// operator monotonicity).
inline ClassificationVerdict classify_operator_monotone(
    const ScalarFunction& f, int n_max = 8, int trials = 400,
    std::uint64_t seed = 42, double tol = 1e-9) {
    return detail::classify_with(
        f,
        [](const ScalarFunction& fn, const SamplePoints& p) {
            return loewner_matrix(fn, p);
        },
        n_max, trials, seed, tol);
}

inline ClassificationVerdict classify_operator_monotone_decreasing(
    const ScalarFunction& f, int n_max = 8, int trials = 400,
    std::uint64_t seed = 42, double tol = 1e-9) {
    return classify_operator_monotone(negation_of(f), n_max, trials, seed, tol);
}

// t -> sqrt(t) f(sqrt(t)); the pivot transform of the Kwong/monotone
// equivalence
inline ScalarFunction audenaert_transform(const ScalarFunction& f) {
    FunctionClaims none;
    return ScalarFunction(
        "audenaert(" + f.id() + ")",
        [f](double t) {
            const double r = std::sqrt(t);
            return r * f(r);
        },
        [f](double t) {
            const double r = std::sqrt(t);
            return f(r) / (2.0 * r) + 0.5 * f.derivative(r);
        },
        none, 0.0, "sqrt(t) f(sqrt(t))");
}

namespace detail {

inline bool probe_nonnegative(const ScalarFunction& f, double lo = 1e-3,
                              double hi = 1e3, int count = 200) {
    const double step = std::pow(hi / lo, 1.0 / (count - 1));
    double x = lo;
    for (int i = 0; i < count; ++i, x *= step) {
        double v = 0.0;
        try {
            v = f(x);
        } catch (const EvaluationError&) {
            continue;
        } catch (const DomainError&) {
            continue;
        }
        if (v < -1e-12) return false;
    }
    return true;
}

}

struct AudenaertCheck {
    ClassificationVerdict kwong_verdict;
    ClassificationVerdict transform_monotone;
    bool transform_nonnegative = true;
    bool coherent = true;  // both searches agree (refuted or not refuted)
};

// Runs the Kwong search on f and the monotonicity search on sqrt(t) f(sqrt(t))
// over identical point streams, then compares the verdicts.
inline AudenaertCheck check_audenaert_equivalence(const ScalarFunction& f,
                                                  int n_max = 8,
                                                  int trials = 400,
                                                  std::uint64_t seed = 42,
                                                  double tol = 1e-9) {
    AudenaertCheck out;
    out.kwong_verdict = classify_kwong(f, n_max, trials, seed, tol);
    const ScalarFunction g = audenaert_transform(f);
    out.transform_monotone =
        classify_operator_monotone(g, n_max, trials, seed, tol);
    out.transform_nonnegative = detail::probe_nonnegative(g);
    out.coherent =
        out.kwong_verdict.refuted == out.transform_monotone.refuted;
    return out;
}

// x -> x^p f(x^p)
inline ScalarFunction power_scaled_transform(const ScalarFunction& f,
                                             double p) {
    FunctionClaims none;
    return ScalarFunction(
        "xpf(" + detail::format_double(p) + ";" + f.id() + ")",
        [f, p](double x) {
            if (p == 0.0) return f(1.0);
            const double u = std::pow(x, p);
            return u * f(u);
        },
        [f, p](double x) {
            if (p == 0.0) return 0.0;
            const double u = std::pow(x, p);
            return p * std::pow(x, p - 1.0) * f(u) +
                   p * std::pow(x, 2.0 * p - 1.0) * f.derivative(u);
        },
        none, 0.0, "x^p f(x^p)");
}

// x -> f(x^p) / x^p
inline ScalarFunction power_ratio_transform(const ScalarFunction& f,
                                            double p) {
    FunctionClaims none;
    return ScalarFunction(
        "fratio(" + detail::format_double(p) + ";" + f.id() + ")",
        [f, p](double x) {
            if (p == 0.0) return f(1.0);
            const double u = std::pow(x, p);
            return f(u) / u;
        },
        [f, p](double x) {
            if (p == 0.0) return 0.0;
            const double u = std::pow(x, p);
            const double dru = (f.derivative(u) * u - f(u)) / (u * u);
            return dru * p * std::pow(x, p - 1.0);
        },
        none, 0.0, "f(x^p) / x^p");
}

struct Theorem31Result {
    double p = 0.5;
    // searches
    ClassificationVerdict transform_monotone;  // x^p f(x^p), Loewner side
    bool transform_nonnegative = true;
    ClassificationVerdict f_kwong;             // f, Kwong side
    ClassificationVerdict ratio_decreasing;    // f(x^p)/x^p, decreasing side
    // part (i): p >= 1/2 and the transform is a nonneg monotone
    //           => f should be Kwong
    bool part_i_applicable = false;
    bool part_i_violated = false;
    // part (ii): p <= 1/2 and f flagged Kwong => transform nonneg monotone
    bool part_ii_applicable = false;
    bool part_ii_violated = false;
    // part (iii): p <= 1/2 and f flagged Kwong => ratio monotone decreasing
    bool part_iii_applicable = false;
    bool part_iii_violated = false;
};

inline Theorem31Result check_theorem31(const ScalarFunction& f, double p,
                                       int n_max = 8, int trials = 400,
                                       std::uint64_t seed = 42,
                                       double tol = 1e-9) {
    if (!(p >= 0.0 && p <= 4.0))
        throw std::invalid_argument("power transform: p must lie in [0, 4]");
    Theorem31Result r;
    r.p = p;
    const ScalarFunction h = power_scaled_transform(f, p);
    r.transform_monotone =
        classify_operator_monotone(h, n_max, trials, seed, tol);
    r.transform_nonnegative = detail::probe_nonnegative(h);
    r.f_kwong = classify_kwong(f, n_max, trials, seed, tol);
    const ScalarFunction q = power_ratio_transform(f, p);
    r.ratio_decreasing =
        classify_operator_monotone_decreasing(q, n_max, trials, seed, tol);

    const bool f_flagged = f.claims().kwong;
    r.part_i_applicable = p >= 0.5;
    r.part_i_violated = r.part_i_applicable &&
                        !r.transform_monotone.refuted &&
                        r.transform_nonnegative && r.f_kwong.refuted;
    r.part_ii_applicable = p <= 0.5 && f_flagged;
    r.part_ii_violated =
        r.part_ii_applicable &&
        (r.transform_monotone.refuted || !r.transform_nonnegative);
    r.part_iii_applicable = p <= 0.5 && f_flagged;
    r.part_iii_violated = r.part_iii_applicable && r.ratio_decreasing.refuted;
    return r;
}

// g(0) by one step of Richardson extrapolation (first order in h)
inline double extrapolate_at_zero(const ScalarFunction& g) {
    const double h0 = 1e-4, h1 = 5e-5, h2 = 2.5e-5;
    const double a1 = 2.0 * g(h1) - g(h0);
    const double a2 = 2.0 * g(h2) - g(h1);
    return (4.0 * a2 - a1) / 3.0;
}

// x -> (g(x) - c) / x
inline ScalarFunction shifted_ratio_transform(const ScalarFunction& g,
                                              double c) {
    FunctionClaims none;
    return ScalarFunction(
        "shiftratio(" + g.id() + ")",
        [g, c](double x) { return (g(x) - c) / x; },
        [g, c](double x) {
            return (g.derivative(x) * x - (g(x) - c)) / (x * x);
        },
        none, 0.0, "(g(x) - g(0)) / x");
}

struct Theorem32Result {
    double p = 0.5;
    double g_at_zero = 0.0;
    bool premise_convex = false;            // flag carried by g
    ClassificationVerdict main;             // g(x^p)/x^p as a Kwong candidate
    ClassificationVerdict shifted_monotone; // (g(x) - g(0))/x
    ClassificationVerdict power_kwong;      // x^p
    bool violated = false;                  // flagged premise, refuted main
};

inline Theorem32Result check_theorem32(const ScalarFunction& g, double p,
                                       int n_max = 8, int trials = 400,
                                       std::uint64_t seed = 42,
                                       double tol = 1e-9) {
    if (!(p >= -1.0 && p <= 1.0))
        throw std::invalid_argument("convex transfer: p must lie in [-1, 1]");
    Theorem32Result r;
    r.p = p;
    r.premise_convex = g.claims().operator_convex;
    r.g_at_zero = extrapolate_at_zero(g);
    r.main = classify_kwong(power_ratio_transform(g, p), n_max, trials, seed,
                            tol);
    r.shifted_monotone = classify_operator_monotone(
        shifted_ratio_transform(g, r.g_at_zero), n_max, trials, seed, tol);
    r.power_kwong = classify_kwong(make_power(p), n_max, trials, seed, tol);
    r.violated = r.premise_convex && r.main.refuted;
    return r;
}

struct ConvexityWitness {
    int trial = 0;
    HermitianMatrix A;
    HermitianMatrix B;
    double alpha = 0.5;
    double slack = 0.0;
};

struct ConvexityVerdict {
    std::string function_id;
    bool refuted = false;
    std::optional<ConvexityWitness> witness;
    int trials = 0;
    int skipped = 0;
    bool consistent() const { return !refuted; }
};

// Random search for a violation of g((1-a)A + aB) <= (1-a)g(A) + a g(B).
inline ConvexityVerdict classify_operator_convex(const ScalarFunction& g,
                                                 std::size_t dim = 2,
                                                 int trials = 200,
                                                 std::uint64_t seed = 42,
                                                 double tol = 1e-9) {
    if (dim < 1) throw std::invalid_argument("dim must be positive");
    ConvexityVerdict v;
    v.function_id = g.id();
    v.trials = trials;
    for (int i = 0; i < trials; ++i) {
        Rng rng(trial_seed(seed, "convexity", static_cast<std::uint64_t>(i)));
        const double alpha = rng.uniform(0.0, 1.0);
        const double lo_a = rng.log_uniform(0.05, 5.0);
        const double hi_a = std::min(lo_a * rng.log_uniform(1.0, 100.0), 50.0);
        const double lo_b = rng.log_uniform(0.05, 5.0);
        const double hi_b = std::min(lo_b * rng.log_uniform(1.0, 100.0), 50.0);
        const HermitianMatrix a = random_hpd(dim, lo_a, hi_a, rng.next_u64());
        const HermitianMatrix b = random_hpd(dim, lo_b, hi_b, rng.next_u64());
        const HermitianMatrix mix = (1.0 - alpha) * a + alpha * b;
        HermitianMatrix lhs, rhs;
        try {
            lhs = apply_scalar_function(mix, g);
            rhs = (1.0 - alpha) * apply_scalar_function(a, g) +
                  alpha * apply_scalar_function(b, g);
        } catch (const EvaluationError&) {
            ++v.skipped;
            continue;
        } catch (const DomainError&) {
            ++v.skipped;
            continue;
        }
        const double denom =
            std::max(1.0, 0.5 * (lhs.frobenius_norm() + rhs.frobenius_norm()));
        const double slack = eig_hermitian(rhs - lhs).min_eigenvalue() / denom;
        if (slack < -tol) {
            v.refuted = true;
            v.witness = ConvexityWitness{i, a, b, alpha, slack};
            break;
        }
    }
    return v;
}

}
