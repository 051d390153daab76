#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "opmeans/bounds.hpp"
#include "opmeans/norms.hpp"
#include "opmeans/random_matrices.hpp"

namespace opmeans {

enum class TheoremId {
    young,
    fujii,
    tominaga,
    thm21,
    remark22,
    cor23,
    cor26,
    thm34,
    cor35,
    norm_chain,
    seo,
    ando_hiai,
    cor36,
    cor38,
    remark39,
};

inline const char* to_string(TheoremId id) {
    switch (id) {
        case TheoremId::young: return "young";
        case TheoremId::fujii: return "fujii-1.2";
        case TheoremId::tominaga: return "tominaga-1.2thm";
        case TheoremId::thm21: return "thm-2.1";
        case TheoremId::remark22: return "remark-2.2";
        case TheoremId::cor23: return "cor-2.3";
        case TheoremId::cor26: return "cor-2.6";
        case TheoremId::thm34: return "thm-3.4";
        case TheoremId::cor35: return "cor-3.5";
        case TheoremId::norm_chain: return "norm-chain";
        case TheoremId::seo: return "seo-3.2.1";
        case TheoremId::ando_hiai: return "ando-hiai";
        case TheoremId::cor36: return "cor-3.6";
        case TheoremId::cor38: return "cor-3.8";
        case TheoremId::remark39: return "remark-3.9";
    }
    return "?";
}

inline std::vector<TheoremId> all_theorems() {
    return {TheoremId::young,   TheoremId::fujii,     TheoremId::tominaga,
            TheoremId::thm21,   TheoremId::remark22,  TheoremId::cor23,
            TheoremId::cor26,   TheoremId::thm34,     TheoremId::cor35,
            TheoremId::norm_chain, TheoremId::seo,    TheoremId::ando_hiai,
            TheoremId::cor36,   TheoremId::cor38,     TheoremId::remark39};
}

inline TheoremId parse_theorem(const std::string& s) {
    for (TheoremId id : all_theorems())
        if (s == to_string(id)) return id;
    if (s == "tominaga") return TheoremId::tominaga;  // short alias
    throw CatalogError(s);
}

// How operand pairs are drawn. spectrum: both operands get eigenvalues in
// [m, M] (attained for dim >= 2), and constants use m, M. sandwich: each
// operand gets its own random spectral range inside [m, M] and constants come
// from the tight per-pair interval.
struct SamplingSpec {
    enum class Mode { spectrum, sandwich };
    Mode mode = Mode::spectrum;
    double m = 1.0;
    double M = 4.0;
};

// fixed weight, or uniform in [0,1] per trial when unset
struct WeightSpec {
    std::optional<double> fixed;
};

struct TrialConfig {
    TheoremId theorem = TheoremId::thm21;
    std::size_t dim = 4;
    int trials = 1000;
    std::uint64_t seed = 42;
    SamplingSpec sampling;
    WeightSpec alpha;
    WeightSpec beta;
    bool tie_beta = false;  // use beta = alpha each trial
    double tol = 1e-9;      // normalized slack tolerance
    std::optional<std::string> function_id;
    std::optional<double> exponent;
    // Fault-injection knob for self-tests: scales the lambda constant before
    // checking. 1.0 in ordinary use.
    double lambda_scale = 1.0;
    int jobs = 1;
};

struct FailureWitness {
    int trial = 0;
    double slack = 0.0;
    HermitianMatrix A;
    HermitianMatrix B;
    double alpha = 0.0;
    double beta = 0.0;
    double s = 1.0;
    double t = 1.0;
    double lambda = 1.0;
    double mu = 1.0;
};

struct InequalityResult {
    TheoremId theorem = TheoremId::thm21;
    std::optional<std::string> function_id;
    std::optional<double> exponent;
    std::size_t dim = 0;
    int trials = 0;
    std::vector<double> slacks;  // per-trial minimum over sub-inequalities
    double min_slack = 0.0;      // tightness over all evaluated trials
    int skipped = 0;
    std::vector<FailureWitness> failures;
};

namespace detail {

inline double norm_denominator(const HermitianMatrix& l,
                               const HermitianMatrix& r) {
    return std::max(1.0, 0.5 * (l.frobenius_norm() + r.frobenius_norm()));
}

// slack of L <= R in Loewner order: min eig(R - L), normalized
inline double loewner_slack(const HermitianMatrix& l, const HermitianMatrix& r) {
    const double raw = eig_hermitian(r - l).min_eigenvalue();
    return raw / norm_denominator(l, r);
}

inline double scalar_slack(double l, double r) {
    return (r - l) / std::max(1.0, 0.5 * (std::abs(l) + std::abs(r)));
}

inline std::vector<double> pow_all(std::vector<double> v, double p) {
    for (double& x : v) x = std::pow(x, p);
    return v;
}

}

// One sampled operand pair with everything derived from it. Decompositions of
// A and B are the ones used to build them; X = A^{-1/2} B A^{-1/2}.
struct TrialSample {
    HermitianMatrix A;
    HermitianMatrix B;
    SpectralDecomposition eig_a;
    SpectralDecomposition eig_b;
    HermitianMatrix sqrt_a;
    SpectralDecomposition x;
    double s = 1.0;
    double t = 1.0;
    double alpha = 0.5;
    double beta = 0.5;

    HermitianMatrix nabla(double w) const {
        return (1.0 - w) * A + w * B;
    }
    // sqrt(A) g(X) sqrt(A)
    template <typename G>
    HermitianMatrix from_relative(G&& g) const {
        return congruence(x.apply(std::forward<G>(g)), sqrt_a.matrix());
    }
    HermitianMatrix sharp(double b) const {
        return from_relative([b](double v) { return std::pow(v, b); });
    }
    HermitianMatrix bang(double w) const {
        return from_relative(
            [w](double v) { return v / ((1.0 - w) * v + w); });
    }
    double envelope_min() const {
        return std::min(eig_a.min_eigenvalue(), eig_b.min_eigenvalue());
    }
    double envelope_max() const {
        return std::max(eig_a.max_eigenvalue(), eig_b.max_eigenvalue());
    }
};

namespace detail {

inline std::string check_label(TheoremId theorem,
                               const std::optional<std::string>& fn,
                               const std::optional<double>& p,
                               std::size_t dim) {
    std::string label = to_string(theorem);
    if (fn) label += "|" + *fn;
    if (p) label += "|p=" + format_double(*p);
    label += "|dim=" + std::to_string(dim);
    return label;
}

// Policy table: sampling mode and weight handling per theorem. Operator
// function checks (section-3 style) recenter each pair so the tight interval
// is reciprocal around 1; that both matches their hypotheses (lambda >= 1)
// and keeps the bound constants on the conservative side of mu.
struct CheckPolicy {
    SamplingSpec::Mode mode = SamplingSpec::Mode::sandwich;
    bool center = false;
    std::optional<double> alpha_fixed;  // policy-forced weight
    std::optional<double> beta_fixed;
    bool tie_beta = false;
    bool needs_function = false;
    bool needs_exponent = false;
    double p_min = 0.0, p_max = 1.0;
    enum class Claim { none, nonneg_monotone, kwong, convex };
    Claim required_claim = Claim::none;
};

inline CheckPolicy check_policy(TheoremId id) {
    using Mode = SamplingSpec::Mode;
    CheckPolicy p;
    switch (id) {
        case TheoremId::young:
            p.mode = Mode::sandwich;
            break;
        case TheoremId::fujii:
            p.mode = Mode::spectrum;
            p.alpha_fixed = 0.5;
            p.beta_fixed = 0.5;
            break;
        case TheoremId::tominaga:
            p.mode = Mode::spectrum;
            p.tie_beta = true;
            break;
        case TheoremId::thm21:
        case TheoremId::remark22:
            p.mode = Mode::sandwich;
            break;
        case TheoremId::cor23:
            p.mode = Mode::spectrum;
            break;
        case TheoremId::cor26:
            p.mode = Mode::spectrum;
            p.beta_fixed = 0.5;
            break;
        case TheoremId::thm34:
            p.mode = Mode::sandwich;
            p.center = true;
            p.needs_function = true;
            p.required_claim = CheckPolicy::Claim::nonneg_monotone;
            break;
        case TheoremId::cor35:
            p.mode = Mode::sandwich;
            p.center = true;
            p.needs_exponent = true;
            break;
        case TheoremId::norm_chain:
            p.mode = Mode::sandwich;
            p.center = true;
            p.needs_exponent = true;
            break;
        case TheoremId::seo:
            p.mode = Mode::spectrum;
            p.tie_beta = true;
            p.needs_exponent = true;
            p.p_min = 1e-9;
            break;
        case TheoremId::ando_hiai:
            p.mode = Mode::sandwich;
            p.tie_beta = true;
            p.needs_exponent = true;
            p.p_min = 1.0;
            p.p_max = 64.0;
            break;
        case TheoremId::cor36:
            p.mode = Mode::sandwich;
            p.center = true;
            p.tie_beta = true;
            p.needs_function = true;
            p.needs_exponent = true;
            p.p_max = 0.5;
            p.required_claim = CheckPolicy::Claim::kwong;
            break;
        case TheoremId::cor38:
        case TheoremId::remark39:
            p.mode = Mode::sandwich;
            p.center = true;
            p.needs_function = true;
            p.needs_exponent = true;
            p.p_max = 0.5;
            p.required_claim = CheckPolicy::Claim::convex;
            break;
    }
    return p;
}

struct ResolvedCheck {
    TrialConfig cfg;
    CheckPolicy policy;
    std::optional<ScalarFunction> fn;
    double p = 0.0;
    std::string label;
};

inline ResolvedCheck resolve_check(const TrialConfig& cfg) {
    ResolvedCheck r;
    r.cfg = cfg;
    r.policy = check_policy(cfg.theorem);
    if (r.policy.alpha_fixed) r.cfg.alpha.fixed = r.policy.alpha_fixed;
    if (r.policy.beta_fixed) r.cfg.beta.fixed = r.policy.beta_fixed;
    if (r.policy.tie_beta) r.cfg.tie_beta = true;
    r.cfg.sampling.mode = r.policy.mode;
    if (r.policy.needs_function) {
        if (!cfg.function_id)
            throw std::invalid_argument(
                std::string(to_string(cfg.theorem)) + ": function id required");
        r.fn = parse_function(*cfg.function_id);
        const FunctionClaims& cl = r.fn->claims();
        using Claim = CheckPolicy::Claim;
        const bool ok =
            r.policy.required_claim == Claim::none ||
            (r.policy.required_claim == Claim::nonneg_monotone &&
             cl.nonneg_operator_monotone) ||
            (r.policy.required_claim == Claim::kwong && cl.kwong) ||
            (r.policy.required_claim == Claim::convex && cl.operator_convex);
        if (!ok)
            throw std::invalid_argument(std::string(to_string(cfg.theorem)) +
                                        ": " + r.fn->id() +
                                        " lacks the required class flag");
    }
    if (r.policy.needs_exponent) {
        if (!cfg.exponent)
            throw std::invalid_argument(std::string(to_string(cfg.theorem)) +
                                        ": exponent p required");
        r.p = *cfg.exponent;
        if (!(r.p >= r.policy.p_min && r.p <= r.policy.p_max))
            throw std::invalid_argument(std::string(to_string(cfg.theorem)) +
                                        ": exponent p out of range");
    }
    if (!(cfg.dim >= 1 && cfg.dim <= 32))
        throw std::invalid_argument("dim must lie in [1, 32]");
    r.label = check_label(cfg.theorem, cfg.function_id, cfg.exponent, cfg.dim);
    return r;
}

inline TrialSample make_sample(const ResolvedCheck& rc, int trial_index) {
    const TrialConfig& cfg = rc.cfg;
    Rng rng(trial_seed(cfg.seed, rc.label, static_cast<std::uint64_t>(trial_index)));

    TrialSample smp;
    smp.alpha = cfg.alpha.fixed ? *cfg.alpha.fixed : rng.uniform(0.0, 1.0);
    if (cfg.tie_beta)
        smp.beta = smp.alpha;
    else
        smp.beta = cfg.beta.fixed ? *cfg.beta.fixed : rng.uniform(0.0, 1.0);

    double ma = cfg.sampling.m, Ma = cfg.sampling.M;
    double mb = cfg.sampling.m, Mb = cfg.sampling.M;
    if (cfg.sampling.mode == SamplingSpec::Mode::sandwich) {
        const double a1 = rng.log_uniform(cfg.sampling.m, cfg.sampling.M);
        const double a2 = rng.log_uniform(cfg.sampling.m, cfg.sampling.M);
        const double b1 = rng.log_uniform(cfg.sampling.m, cfg.sampling.M);
        const double b2 = rng.log_uniform(cfg.sampling.m, cfg.sampling.M);
        ma = std::min(a1, a2);
        Ma = std::max(a1, a2);
        mb = std::min(b1, b2);
        Mb = std::max(b1, b2);
    }
    smp.eig_a = random_hpd_decomposition(cfg.dim, ma, Ma, rng.next_u64());
    smp.eig_b = random_hpd_decomposition(cfg.dim, mb, Mb, rng.next_u64());
    smp.A = smp.eig_a.reconstruct();
    smp.B = smp.eig_b.reconstruct();
    smp.sqrt_a = smp.eig_a.apply([](double v) { return std::sqrt(v); });
    const HermitianMatrix inv_sqrt_a =
        smp.eig_a.apply([](double v) { return 1.0 / std::sqrt(v); });
    smp.x = eig_hermitian(congruence(smp.B, inv_sqrt_a.matrix()));
    smp.s = smp.x.min_eigenvalue();
    smp.t = smp.x.max_eigenvalue();

    if (rc.policy.center) {
        // rescale B so the tight interval becomes (sqrt(s/t), sqrt(t/s)),
        // reciprocal around 1; scaling acts linearly on every piece
        const double c = 1.0 / std::sqrt(smp.s * smp.t);
        smp.B *= c;
        for (double& v : smp.eig_b.eigenvalues) v *= c;
        for (double& v : smp.x.eigenvalues) v *= c;
        smp.s *= c;
        smp.t *= c;
    }
    return smp;
}

struct TrialOutcome {
    double slack = 0.0;
    bool skipped = false;
};

struct EvalContext {
    const TrialSample& smp;
    double lambda = 1.0;
    double mu = 1.0;
    double p = 0.0;
    const ScalarFunction* fn = nullptr;
    double tol = 1e-9;
};

// constants used by each theorem, computed from the sample and config
inline void constants_for(TheoremId id, const TrialConfig& cfg,
                          const TrialSample& smp, double& lambda, double& mu) {
    switch (id) {
        case TheoremId::young:
        case TheoremId::ando_hiai:
            lambda = mu = 1.0;
            break;
        case TheoremId::fujii: {
            lambda = mu = std::sqrt(kantorovich(cfg.sampling.M / cfg.sampling.m));
            break;
        }
        case TheoremId::tominaga:
            lambda = specht(cfg.sampling.M / cfg.sampling.m);
            mu = 1.0;
            break;
        case TheoremId::seo:
            lambda = specht(cfg.sampling.M / cfg.sampling.m);
            mu = 1.0;
            break;
        case TheoremId::cor23:
            lambda = mu = corollary_lambda(cfg.sampling.m, cfg.sampling.M,
                                           smp.alpha, smp.beta);
            break;
        case TheoremId::cor26:
            lambda = mu =
                corollary26_lambda(cfg.sampling.m, cfg.sampling.M, smp.alpha);
            break;
        default: {
            const BoundParams bp{{smp.s, smp.t}, smp.alpha, smp.beta};
            lambda = lambda_bound(bp);
            mu = mu_bound(bp);
            break;
        }
    }
    lambda *= cfg.lambda_scale;
}

inline TrialOutcome eval_young(const EvalContext& c) {
    const TrialSample& s = c.smp;
    const HermitianMatrix nab = s.nabla(s.alpha);
    const HermitianMatrix shp = s.sharp(s.alpha);
    const HermitianMatrix bng = s.bang(s.alpha);
    return {std::min(loewner_slack(shp, nab), loewner_slack(bng, shp))};
}

// lambda^{-1} (A nabla B) <= A sharp_beta B <= mu (A bang B)
inline TrialOutcome eval_two_sided(const EvalContext& c) {
    const TrialSample& s = c.smp;
    const HermitianMatrix nab = (1.0 / c.lambda) * s.nabla(s.alpha);
    const HermitianMatrix shp = s.sharp(s.beta);
    const HermitianMatrix bng = c.mu * s.bang(s.alpha);
    return {std::min(loewner_slack(nab, shp), loewner_slack(shp, bng))};
}

inline TrialOutcome eval_tominaga(const EvalContext& c) {
    const TrialSample& s = c.smp;
    return {loewner_slack(s.nabla(s.alpha), c.lambda * s.sharp(s.alpha))};
}

using MeanFactory = std::function<ScalarFunction(double alpha)>;

inline MeanFactory geometric_factory() {
    return [](double a) { return make_power(a); };
}

inline TrialOutcome eval_remark22(const EvalContext& c,
                                  const MeanFactory& sigma_fac,
                                  const MeanFactory& tau_fac) {
    const TrialSample& s = c.smp;
    const ScalarFunction sigma = sigma_fac(s.alpha);
    const ScalarFunction tau = tau_fac(s.alpha);
    const HermitianMatrix m_sigma =
        s.from_relative([&](double v) { return sigma(v); });
    const HermitianMatrix m_tau =
        s.from_relative([&](double v) { return tau(v); });
    // hypothesis: sigma below the arithmetic mean, tau above the harmonic
    if (loewner_slack(m_sigma, s.nabla(s.alpha)) < -c.tol ||
        loewner_slack(s.bang(s.alpha), m_tau) < -c.tol)
        return {0.0, true};
    const HermitianMatrix shp = s.sharp(s.beta);
    return {std::min(loewner_slack((1.0 / c.lambda) * m_sigma, shp),
                     loewner_slack(shp, c.mu * m_tau))};
}

inline TrialOutcome eval_thm34(const EvalContext& c) {
    const TrialSample& s = c.smp;
    const ScalarFunction& f = *c.fn;
    const HermitianMatrix fa = s.eig_a.apply([&](double v) { return f(v); });
    const HermitianMatrix fb = s.eig_b.apply([&](double v) { return f(v); });
    const HermitianMatrix lhs = (1.0 - s.alpha) * fa + s.alpha * fb;
    const SpectralDecomposition eig_g = eig_hermitian(s.sharp(s.beta));
    const HermitianMatrix fg = eig_g.apply([&](double v) { return f(v); });
    const double main = loewner_slack(lhs, c.lambda * fg);
    // proof chain: concavity step, then the scaling lemma f(cX) <= c f(X)
    const HermitianMatrix f_nab =
        eig_hermitian(s.nabla(s.alpha)).apply([&](double v) { return f(v); });
    const double step1 = loewner_slack(lhs, f_nab);
    const double lam = c.lambda;
    const HermitianMatrix f_lam_g =
        eig_g.apply([&](double v) { return f(lam * v); });
    const double step2 = loewner_slack(f_lam_g, lam * fg);
    return {std::min({main, step1, step2})};
}

inline TrialOutcome eval_cor35(const EvalContext& c) {
    const TrialSample& s = c.smp;
    const double p = c.p;
    const HermitianMatrix ap = s.eig_a.apply([p](double v) { return std::pow(v, p); });
    const HermitianMatrix bp = s.eig_b.apply([p](double v) { return std::pow(v, p); });
    const HermitianMatrix lhs = (1.0 - s.alpha) * ap + s.alpha * bp;
    const SpectralDecomposition eig_g = eig_hermitian(s.sharp(s.beta));
    const HermitianMatrix gp = eig_g.apply([p](double v) { return std::pow(v, p); });
    return {loewner_slack(lhs, std::pow(c.lambda, p) * gp)};
}

// Ky Fan k = 1..dim plus Schatten 1 and 2 from one singular value pass
inline std::vector<double> norm_family(const std::vector<double>& sv) {
    std::vector<double> out;
    double run = 0.0;
    for (double v : sv) {
        run += v;
        out.push_back(run);  // Ky Fan k
    }
    double s2 = 0.0;
    for (double v : sv) s2 += v * v;
    out.push_back(std::sqrt(s2));  // Schatten 2 (Schatten 1 = Ky Fan dim)
    return out;
}

// the power-mean pair (A^p, B^p) with its geometric mean, shared by the
// norm-based checks
struct PowerPairParts {
    HermitianMatrix ap, bp;
    HermitianMatrix sharp_pq;       // A^p sharp_alpha B^p
    std::vector<double> sv_gp;      // singular values of (A sharp_beta B)^p
};

inline PowerPairParts power_pair_parts(const TrialSample& s, double p,
                                       double mean_beta) {
    PowerPairParts parts;
    parts.ap = s.eig_a.apply([p](double v) { return std::pow(v, p); });
    parts.bp = s.eig_b.apply([p](double v) { return std::pow(v, p); });
    SpectralDecomposition eig_ap{detail::pow_all(s.eig_a.eigenvalues, p),
                                 s.eig_a.unitary};
    PairContext ctx(eig_ap, parts.bp);
    const double a = s.alpha;
    parts.sharp_pq =
        ctx.transform([a](double v) { return std::pow(v, a); });
    const SpectralDecomposition eig_g = eig_hermitian(s.sharp(mean_beta));
    std::vector<double> gp = detail::pow_all(eig_g.eigenvalues, p);
    for (double& v : gp) v = std::abs(v);
    std::sort(gp.begin(), gp.end(), std::greater<>());
    parts.sv_gp = std::move(gp);
    return parts;
}

inline TrialOutcome eval_norm_chain(const EvalContext& c) {
    const TrialSample& s = c.smp;
    PowerPairParts parts = power_pair_parts(s, c.p, s.beta);
    const HermitianMatrix lhs_nab =
        (1.0 - s.alpha) * parts.ap + s.alpha * parts.bp;
    const std::vector<double> n_sharp = norm_family(singular_values(parts.sharp_pq));
    const std::vector<double> n_nab = norm_family(singular_values(lhs_nab));
    const std::vector<double> n_gp = norm_family(parts.sv_gp);
    const double lam_p = std::pow(c.lambda, c.p);
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_sharp.size(); ++i) {
        slack = std::min(slack, scalar_slack(n_sharp[i], n_nab[i]));
        slack = std::min(slack, scalar_slack(n_nab[i], lam_p * n_gp[i]));
    }
    return {slack};
}

inline TrialOutcome eval_seo(const EvalContext& c) {
    const TrialSample& s = c.smp;
    PowerPairParts parts = power_pair_parts(s, c.p, s.alpha);
    const std::vector<double> n_sharp = norm_family(singular_values(parts.sharp_pq));
    const std::vector<double> n_gp = norm_family(parts.sv_gp);
    const double sp = std::pow(c.lambda, c.p);  // S(h)^p
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_sharp.size(); ++i)
        slack = std::min(slack, scalar_slack(n_sharp[i], sp * n_gp[i]));
    // scalar cross-check: the alpha = beta constant stays under the Specht
    // envelope of the tight interval
    const double lam_tight = lambda_bound({{s.s, s.t}, s.alpha, s.alpha});
    const double gamma = gamma_bound({s.s, s.t});
    slack = std::min(slack, scalar_slack(lam_tight, gamma));
    return {slack};
}

inline TrialOutcome eval_ando_hiai(const EvalContext& c) {
    const TrialSample& s = c.smp;
    PowerPairParts parts = power_pair_parts(s, c.p, s.alpha);
    const std::vector<double> n_sharp = norm_family(singular_values(parts.sharp_pq));
    const std::vector<double> n_gp = norm_family(parts.sv_gp);
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_sharp.size(); ++i)
        slack = std::min(slack, scalar_slack(n_sharp[i], n_gp[i]));
    return {slack};
}

inline TrialOutcome eval_cor36(const EvalContext& c) {
    const TrialSample& s = c.smp;
    const ScalarFunction& f = *c.fn;
    const double p = c.p;
    auto h = [&](double v) {
        if (p == 0.0) return f(1.0);
        const double vp = std::pow(v, p);
        return vp * f(vp);
    };
    const HermitianMatrix ha = s.eig_a.apply(h);
    const HermitianMatrix hb = s.eig_b.apply(h);
    const HermitianMatrix lhs = (1.0 - s.alpha) * ha + s.alpha * hb;
    const SpectralDecomposition eig_g = eig_hermitian(s.sharp(s.beta));
    const HermitianMatrix hg = eig_g.apply(h);
    double slack = loewner_slack(lhs, c.lambda * hg);
    if (s.alpha == s.beta) {
        // geometric-mean variant against the Specht envelope of the pair
        const double h_env = s.envelope_max() / s.envelope_min();
        const double gamma = specht(h_env);
        PairContext ctx(ha, hb);
        const double a = s.alpha;
        const HermitianMatrix sharp_h =
            ctx.transform([a](double v) { return std::pow(v, a); });
        slack = std::min(slack, loewner_slack(sharp_h, gamma * hg));
    }
    return {slack};
}

inline TrialOutcome eval_cor38(const EvalContext& c, bool geometric_lhs) {
    const TrialSample& s = c.smp;
    const ScalarFunction& g = *c.fn;
    const double p = c.p;
    auto k = [&](double v) { return p == 0.0 ? g(1.0) : g(std::pow(v, p)); };
    const HermitianMatrix ka = s.eig_a.apply(k);
    const HermitianMatrix kb = s.eig_b.apply(k);
    const SpectralDecomposition eig_g = eig_hermitian(s.sharp(s.beta));
    const HermitianMatrix kg = eig_g.apply(k);
    HermitianMatrix lhs;
    if (geometric_lhs) {
        PairContext ctx(ka, kb);
        const double a = s.alpha;
        lhs = ctx.transform([a](double v) { return std::pow(v, a); });
    } else {
        lhs = (1.0 - s.alpha) * ka + s.alpha * kb;
    }
    return {loewner_slack(lhs, c.lambda * kg)};
}

inline TrialOutcome evaluate_inequality(TheoremId id, const EvalContext& c,
                                        const MeanFactory& sigma_fac,
                                        const MeanFactory& tau_fac) {
    switch (id) {
        case TheoremId::young: return eval_young(c);
        case TheoremId::fujii:
        case TheoremId::thm21:
        case TheoremId::cor23:
        case TheoremId::cor26: return eval_two_sided(c);
        case TheoremId::tominaga: return eval_tominaga(c);
        case TheoremId::remark22: return eval_remark22(c, sigma_fac, tau_fac);
        case TheoremId::thm34: return eval_thm34(c);
        case TheoremId::cor35: return eval_cor35(c);
        case TheoremId::norm_chain: return eval_norm_chain(c);
        case TheoremId::seo: return eval_seo(c);
        case TheoremId::ando_hiai: return eval_ando_hiai(c);
        case TheoremId::cor36: return eval_cor36(c);
        case TheoremId::cor38: return eval_cor38(c, false);
        case TheoremId::remark39: return eval_cor38(c, true);
    }
    throw std::invalid_argument("unknown theorem");
}

template <typename Body>
inline void parallel_trials(int trials, int jobs, Body&& body) {
    if (jobs <= 1 || trials <= 1) {
        for (int i = 0; i < trials; ++i) body(i);
        return;
    }
    const int nthreads = std::min(jobs, trials);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int th = 0; th < nthreads; ++th)
        pool.emplace_back([&, th] {
            try {
                for (int i = th; i < trials; i += nthreads) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}

// Run one inequality check over randomized trials. Deterministic given the
// config, independent of the job count.
inline InequalityResult
run_check(const TrialConfig& cfg,
          const detail::MeanFactory& sigma_fac = detail::geometric_factory(),
          const detail::MeanFactory& tau_fac = detail::geometric_factory()) {
    const detail::ResolvedCheck rc = detail::resolve_check(cfg);

    InequalityResult res;
    res.theorem = cfg.theorem;
    res.function_id = cfg.function_id;
    res.exponent = cfg.exponent;
    res.dim = cfg.dim;
    res.trials = cfg.trials;
    res.slacks.assign(static_cast<std::size_t>(cfg.trials), 0.0);

    std::vector<std::optional<FailureWitness>> fails(
        static_cast<std::size_t>(cfg.trials));
    std::vector<char> skipped_flags(static_cast<std::size_t>(cfg.trials), 0);

    detail::parallel_trials(cfg.trials, cfg.jobs, [&](int i) {
        const TrialSample smp = detail::make_sample(rc, i);
        double lambda = 1.0, mu = 1.0;
        detail::constants_for(cfg.theorem, rc.cfg, smp, lambda, mu);
        detail::EvalContext ctx{smp, lambda, mu, rc.p,
                                rc.fn ? &*rc.fn : nullptr, cfg.tol};
        const detail::TrialOutcome out =
            detail::evaluate_inequality(cfg.theorem, ctx, sigma_fac, tau_fac);
        if (out.skipped) {
            skipped_flags[static_cast<std::size_t>(i)] = 1;
            res.slacks[static_cast<std::size_t>(i)] =
                std::numeric_limits<double>::infinity();
            return;
        }
        res.slacks[static_cast<std::size_t>(i)] = out.slack;
        if (out.slack < -cfg.tol) {
            FailureWitness w;
            w.trial = i;
            w.slack = out.slack;
            w.A = smp.A;
            w.B = smp.B;
            w.alpha = smp.alpha;
            w.beta = smp.beta;
            w.s = smp.s;
            w.t = smp.t;
            w.lambda = lambda;
            w.mu = mu;
            fails[static_cast<std::size_t>(i)] = std::move(w);
        }
    });

    res.min_slack = std::numeric_limits<double>::infinity();
    for (double v : res.slacks) res.min_slack = std::min(res.min_slack, v);
    for (char f : skipped_flags) res.skipped += f;
    for (auto& f : fails)
        if (f) res.failures.push_back(std::move(*f));
    if (res.trials == 0 || res.skipped == res.trials) res.min_slack = 0.0;
    return res;
}

// Re-evaluate a recorded failure standalone, from its serialized operands and
// constants. Reproduces the recorded slack up to eigensolver round-off.
inline double reevaluate_witness(TheoremId theorem,
                                 const std::optional<std::string>& function_id,
                                 const std::optional<double>& exponent,
                                 const FailureWitness& w, double tol = 1e-9) {
    TrialSample smp;
    smp.A = w.A;
    smp.B = w.B;
    smp.eig_a = eig_hermitian(w.A);
    smp.eig_b = eig_hermitian(w.B);
    smp.sqrt_a = smp.eig_a.apply([](double v) { return std::sqrt(v); });
    const HermitianMatrix inv_sqrt_a =
        smp.eig_a.apply([](double v) { return 1.0 / std::sqrt(v); });
    smp.x = eig_hermitian(congruence(w.B, inv_sqrt_a.matrix()));
    smp.s = w.s;
    smp.t = w.t;
    smp.alpha = w.alpha;
    smp.beta = w.beta;

    std::optional<ScalarFunction> fn;
    if (function_id) fn = parse_function(*function_id);
    detail::EvalContext ctx{smp, w.lambda, w.mu,
                            exponent.value_or(0.0), fn ? &*fn : nullptr, tol};
    return detail::evaluate_inequality(theorem, ctx,
                                       detail::geometric_factory(),
                                       detail::geometric_factory())
        .slack;
}

// One entry of the default verification matrix.
struct SuiteEntry {
    TheoremId theorem;
    std::optional<std::string> function_id;
    std::optional<double> exponent;
};

// The default check matrix: every theorem, with the standard function and
// exponent variants.
inline std::vector<SuiteEntry> default_suite() {
    std::vector<SuiteEntry> v;
    v.push_back({TheoremId::young, {}, {}});
    v.push_back({TheoremId::fujii, {}, {}});
    v.push_back({TheoremId::tominaga, {}, {}});
    v.push_back({TheoremId::thm21, {}, {}});
    v.push_back({TheoremId::remark22, {}, {}});
    v.push_back({TheoremId::cor23, {}, {}});
    v.push_back({TheoremId::cor26, {}, {}});
    for (const char* f : {"identity", "sqrt", "power:0.3", "log1p"})
        v.push_back({TheoremId::thm34, std::string(f), {}});
    for (double p : {0.0, 0.5, 1.0})
        v.push_back({TheoremId::cor35, {}, p});
    v.push_back({TheoremId::norm_chain, {}, 0.5});
    v.push_back({TheoremId::seo, {}, 0.5});
    for (double p : {1.0, 2.0, 3.0})
        v.push_back({TheoremId::ando_hiai, {}, p});
    for (double p : {0.25, 0.5})
        v.push_back({TheoremId::cor36, std::string("sinh_inv"), p});
    for (const char* g : {"square", "inverse"})
        for (double p : {0.25, 0.5})
            v.push_back({TheoremId::cor38, std::string(g), p});
    for (const char* g : {"square", "inverse"})
        for (double p : {0.25, 0.5})
            v.push_back({TheoremId::remark39, std::string(g), p});
    return v;
}

// entries for one theorem with its default variants
inline std::vector<SuiteEntry> entries_for(TheoremId id) {
    std::vector<SuiteEntry> out;
    for (const SuiteEntry& e : default_suite())
        if (e.theorem == id) out.push_back(e);
    return out;
}

struct SuiteConfig {
    std::vector<std::size_t> dims{1, 2, 4, 8};
    int trials = 1000;
    std::uint64_t seed = 42;
    double m = 1.0;
    double M = 4.0;
    double tol = 1e-9;
    std::optional<double> alpha_fixed;
    std::optional<double> beta_fixed;
    int jobs = 1;
    double lambda_scale = 1.0;
};

struct VerificationReport {
    SuiteConfig config;
    std::vector<SuiteEntry> entries;
    std::vector<InequalityResult> results;
    bool pass = true;
    std::int64_t elapsed_ms = 0;  // measured; serialized reports omit timing
};

inline VerificationReport run_suite(const SuiteConfig& cfg,
                                    const std::vector<SuiteEntry>& entries) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.config = cfg;
    rep.entries = entries;
    for (const SuiteEntry& e : entries)
        for (std::size_t dim : cfg.dims) {
            TrialConfig tc;
            tc.theorem = e.theorem;
            tc.dim = dim;
            tc.trials = cfg.trials;
            tc.seed = cfg.seed;
            tc.sampling.m = cfg.m;
            tc.sampling.M = cfg.M;
            tc.tol = cfg.tol;
            tc.alpha.fixed = cfg.alpha_fixed;
            tc.beta.fixed = cfg.beta_fixed;
            tc.function_id = e.function_id;
            tc.exponent = e.exponent;
            tc.lambda_scale = cfg.lambda_scale;
            tc.jobs = cfg.jobs;
            InequalityResult r = run_check(tc);
            if (!r.failures.empty()) rep.pass = false;
            rep.results.push_back(std::move(r));
        }
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rep;
}

}
