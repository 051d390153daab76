#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opmeans/opmeans.hpp"

namespace {

using opmeans::ordered_json;

// exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
// input format error
constexpr int exit_ok = 0;
constexpr int exit_math_failure = 1;
constexpr int exit_usage = 2;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("OPMEANS_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 42;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw opmeans::ParseError("cannot open output file: " + path);
    out << text;
}

opmeans::HermitianMatrix load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw opmeans::ParseError("cannot open matrix file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw opmeans::ParseError(path + ": " + e.what());
    }
    return opmeans::matrix_from_json(j);
}

ordered_json interval_summary(double s, double t, double alpha, double beta) {
    const opmeans::BoundParams bp{{s, t}, alpha, beta};
    ordered_json j;
    j["s"] = s;
    j["t"] = t;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["lambda"] = opmeans::lambda_bound(bp);
    j["mu"] = opmeans::mu_bound(bp);
    j["gamma"] = opmeans::gamma_bound({s, t});
    j["specht_s"] = opmeans::specht(s);
    j["specht_t"] = opmeans::specht(t);
    j["kantorovich"] = opmeans::kantorovich(t / s);
    if (const auto x = opmeans::critical_point(alpha, beta))
        j["critical_point"] = *x;
    else
        j["critical_point"] = nullptr;
    return j;
}

struct BoundsArgs {
    double s = 0, t = 0, m = 0, M = 0;
    double alpha = 0.5, beta = 0.5;
    bool has_s = false, has_t = false, has_m = false, has_M = false;
    std::string out;
};

int run_bounds(const BoundsArgs& a) {
    const bool st = a.has_s || a.has_t;
    const bool mm = a.has_m || a.has_M;
    if (st == mm || (st && !(a.has_s && a.has_t)) ||
        (mm && !(a.has_m && a.has_M)))
        throw std::invalid_argument(
            "bounds: pass either --s with --t, or --m with --M");
    ordered_json j;
    if (st) {
        j = interval_summary(a.s, a.t, a.alpha, a.beta);
    } else {
        if (!(a.m > 0 && a.m <= a.M))
            throw std::invalid_argument("bounds: need 0 < m <= M");
        j = interval_summary(a.m / a.M, a.M / a.m, a.alpha, a.beta);
        ordered_json withm;
        withm["m"] = a.m;
        withm["M"] = a.M;
        for (auto& [k, v] : j.items()) withm[k] = v;
        withm["beta_half_lambda"] =
            opmeans::corollary26_lambda(a.m, a.M, a.alpha);
        j = std::move(withm);
    }
    emit(j.dump(2) + "\n", a.out);
    return exit_ok;
}

struct MeansArgs {
    std::string a_path, b_path;
    double alpha = 0.5;
    double beta = -1.0;  // defaults to alpha
    std::string fn;
    std::string out;
};

int run_means(const MeansArgs& ma) {
    const opmeans::HermitianMatrix a = load_matrix(ma.a_path);
    const opmeans::HermitianMatrix b = load_matrix(ma.b_path);
    const double alpha = ma.alpha;
    const double beta = ma.beta < 0 ? alpha : ma.beta;

    const auto iv = opmeans::sandwich_interval(a, b);
    ordered_json j;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["s"] = iv.s;
    j["t"] = iv.t;
    const opmeans::BoundParams bp{iv, alpha, beta};
    j["lambda"] = opmeans::lambda_bound(bp);
    j["mu"] = opmeans::mu_bound(bp);
    j["gamma"] = opmeans::gamma_bound(iv);
    j["arithmetic"] = opmeans::matrix_to_json(opmeans::arithmetic_mean(a, b, alpha));
    j["geometric"] = opmeans::matrix_to_json(opmeans::geometric_mean(a, b, beta));
    j["harmonic"] = opmeans::matrix_to_json(opmeans::harmonic_mean(a, b, alpha));
    if (!ma.fn.empty()) {
        const opmeans::ScalarFunction f = opmeans::parse_function(ma.fn);
        j["kubo_ando"] = opmeans::matrix_to_json(opmeans::kubo_ando_mean(a, b, f));
        j["kubo_ando_function"] = f.id();
    }
    emit(j.dump(2) + "\n", ma.out);
    return exit_ok;
}

ordered_json verdict_to_json(const opmeans::ClassificationVerdict& v) {
    ordered_json j;
    j["function"] = v.function_id;
    j["refuted"] = v.refuted;
    j["trials"] = v.trials;
    j["skipped"] = v.skipped;
    if (v.witness) {
        ordered_json w;
        w["trial"] = v.witness->trial;
        w["points"] = v.witness->points;
        w["min_eigenvalue"] = v.witness->min_eigenvalue;
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

struct KwongArgs {
    std::string fn;
    int n_max = 8;
    int trials = 400;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    bool audenaert = false;
    std::string out;
};

int run_kwong(const KwongArgs& ka) {
    const opmeans::ScalarFunction f = opmeans::parse_function(ka.fn);
    const auto& cl = f.claims();

    ordered_json j;
    j["function"] = f.id();
    ordered_json claims;
    claims["nonneg_operator_monotone"] = cl.nonneg_operator_monotone;
    claims["operator_monotone_decreasing"] = cl.operator_monotone_decreasing;
    claims["operator_convex"] = cl.operator_convex;
    claims["kwong"] = cl.kwong;
    claims["representing"] = cl.representing;
    j["claims"] = std::move(claims);

    const auto kwong =
        opmeans::classify_kwong(f, ka.n_max, ka.trials, ka.seed, ka.tol);
    const auto monotone = opmeans::classify_operator_monotone(
        f, ka.n_max, ka.trials, ka.seed, ka.tol);
    j["kwong"] = verdict_to_json(kwong);
    j["operator_monotone"] = verdict_to_json(monotone);

    bool contradiction = (cl.kwong && kwong.refuted) ||
                         (cl.nonneg_operator_monotone && monotone.refuted);
    if (ka.audenaert) {
        const auto ac = opmeans::check_audenaert_equivalence(
            f, ka.n_max, ka.trials, ka.seed, ka.tol);
        ordered_json aj;
        aj["kwong_refuted"] = ac.kwong_verdict.refuted;
        aj["transform_monotone"] = verdict_to_json(ac.transform_monotone);
        aj["transform_nonnegative"] = ac.transform_nonnegative;
        aj["coherent"] = ac.coherent;
        j["audenaert"] = std::move(aj);
        if (!ac.coherent) contradiction = true;
    }
    j["contradiction"] = contradiction;
    emit(j.dump(2) + "\n", ka.out);
    return contradiction ? exit_math_failure : exit_ok;
}

struct VerifyArgs {
    std::vector<std::string> theorems;
    std::vector<std::size_t> dims;
    int trials = 1000;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    double m = 1.0, M = 4.0;
    double alpha = -1.0, beta = -1.0;
    std::string fn;
    double p = std::numeric_limits<double>::quiet_NaN();
    double lambda_scale = 1.0;
    int jobs = 1;
    std::string out, csv;
};

int run_verify(const VerifyArgs& va) {
    opmeans::SuiteConfig cfg;
    if (!va.dims.empty()) cfg.dims = va.dims;
    cfg.trials = va.trials;
    cfg.seed = va.seed;
    cfg.m = va.m;
    cfg.M = va.M;
    cfg.tol = va.tol;
    if (va.alpha >= 0) cfg.alpha_fixed = va.alpha;
    if (va.beta >= 0) cfg.beta_fixed = va.beta;
    cfg.jobs = va.jobs;
    cfg.lambda_scale = va.lambda_scale;

    std::vector<opmeans::SuiteEntry> entries;
    const bool want_all =
        va.theorems.empty() ||
        std::find(va.theorems.begin(), va.theorems.end(), "all") !=
            va.theorems.end();
    if (want_all) {
        entries = opmeans::default_suite();
    } else {
        for (const std::string& name : va.theorems) {
            const opmeans::TheoremId id = opmeans::parse_theorem(name);
            const auto policy = opmeans::detail::check_policy(id);
            const bool custom = (!va.fn.empty() && policy.needs_function) ||
                                (!std::isnan(va.p) && policy.needs_exponent);
            if (custom) {
                opmeans::SuiteEntry e{id, {}, {}};
                if (policy.needs_function) {
                    if (va.fn.empty())
                        throw std::invalid_argument(
                            std::string(name) + ": --fn required");
                    e.function_id = va.fn;
                }
                if (policy.needs_exponent) {
                    if (std::isnan(va.p))
                        throw std::invalid_argument(std::string(name) +
                                                    ": --p required");
                    e.exponent = va.p;
                }
                entries.push_back(std::move(e));
            } else {
                for (auto& e : opmeans::entries_for(id)) entries.push_back(e);
            }
        }
    }

    const opmeans::VerificationReport rep = opmeans::run_suite(cfg, entries);
    std::cerr << "verify: " << rep.results.size() << " checks, "
              << rep.elapsed_ms << " ms\n";
    emit(opmeans::report_to_json(rep).dump(2) + "\n", va.out);
    if (!va.csv.empty()) emit(opmeans::report_to_csv(rep), va.csv);
    return rep.pass ? exit_ok : exit_math_failure;
}

int run_catalog(bool as_json, const std::string& out) {
    const auto cat = opmeans::function_catalog();
    if (as_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& f : cat) {
            ordered_json j;
            j["id"] = f.id();
            j["nonneg_operator_monotone"] = f.claims().nonneg_operator_monotone;
            j["operator_monotone_decreasing"] =
                f.claims().operator_monotone_decreasing;
            j["operator_convex"] = f.claims().operator_convex;
            j["kwong"] = f.claims().kwong;
            j["representing"] = f.claims().representing;
            j["note"] = f.note();
            arr.push_back(std::move(j));
        }
        emit(arr.dump(2) + "\n", out);
        return exit_ok;
    }
    std::string text;
    for (const auto& f : cat) {
        std::string flags;
        if (f.claims().nonneg_operator_monotone) flags += " monotone";
        if (f.claims().operator_monotone_decreasing) flags += " decreasing";
        if (f.claims().operator_convex) flags += " convex";
        if (f.claims().kwong) flags += " kwong";
        if (f.claims().representing) flags += " representing";
        if (flags.empty()) flags = " (no flags)";
        text += f.id() + ":" + flags + "  [" + f.note() + "]\n";
    }
    emit(text, out);
    return exit_ok;
}

}

int main(int argc, char** argv) {
    CLI::App app{"weighted operator means: bounds, classification, checks"};
    app.require_subcommand(1);
    const std::uint64_t seed0 = default_seed();

    BoundsArgs ba;
    CLI::App* bounds = app.add_subcommand(
        "bounds", "sharp constants for a relative spectral interval");
    CLI::Option* opt_s = bounds->add_option("--s", ba.s, "interval left end");
    CLI::Option* opt_t = bounds->add_option("--t", ba.t, "interval right end");
    CLI::Option* opt_m = bounds->add_option("--m", ba.m, "common lower bound");
    CLI::Option* opt_M = bounds->add_option("--M", ba.M, "common upper bound");
    bounds->add_option("--alpha", ba.alpha, "mean weight")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--beta", ba.beta, "geometric mean weight")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--out", ba.out, "write JSON here instead of stdout");

    MeansArgs ma;
    CLI::App* means = app.add_subcommand(
        "means", "weighted means of two positive definite matrices");
    means->add_option("--A", ma.a_path, "first operand (JSON file)")
        ->required();
    means->add_option("--B", ma.b_path, "second operand (JSON file)")
        ->required();
    means->add_option("--alpha", ma.alpha, "mean weight")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    means->add_option("--beta", ma.beta, "geometric weight (default: alpha)")
        ->check(CLI::Range(0.0, 1.0));
    means->add_option("--fn", ma.fn, "also apply this representing function");
    means->add_option("--out", ma.out, "write JSON here instead of stdout");

    KwongArgs ka;
    ka.seed = seed0;
    CLI::App* kwong = app.add_subcommand(
        "kwong", "randomized matrix-class checks for a scalar function");
    kwong->add_option("--fn", ka.fn, "function id (see catalog)")->required();
    kwong->add_option("--n", ka.n_max, "max sample points per matrix")
        ->check(CLI::Range(2, 32));
    kwong->add_option("--trials", ka.trials, "random point sets to try")
        ->check(CLI::PositiveNumber);
    kwong->add_option("--seed", ka.seed, "RNG seed");
    kwong->add_option("--tol", ka.tol, "negativity tolerance");
    kwong->add_flag("--audenaert", ka.audenaert,
                    "also test the sqrt(t) f(sqrt(t)) equivalence");
    kwong->add_option("--out", ka.out, "write JSON here instead of stdout");

    VerifyArgs va;
    va.seed = seed0;
    CLI::App* verify = app.add_subcommand(
        "verify", "randomized inequality checks with JSON/CSV reports");
    verify->add_option("--theorem", va.theorems,
                       "check name, repeatable ('all' for the full set)");
    verify->add_option("--dim", va.dims, "matrix dimension, repeatable");
    verify->add_option("--trials", va.trials, "trials per check and dimension")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", va.seed, "RNG seed");
    verify->add_option("--tol", va.tol, "slack tolerance");
    verify->add_option("--m", va.m, "spectral lower bound");
    verify->add_option("--M", va.M, "spectral upper bound");
    verify->add_option("--alpha", va.alpha, "fix the arithmetic weight")
        ->check(CLI::Range(0.0, 1.0));
    verify->add_option("--beta", va.beta, "fix the geometric weight")
        ->check(CLI::Range(0.0, 1.0));
    verify->add_option("--fn", va.fn, "function id for function checks");
    verify->add_option("--p", va.p, "exponent for power checks");
    verify->add_option("--lambda-scale", va.lambda_scale,
                       "scale the lambda constant (self-test knob)");
    verify->add_option("--jobs", va.jobs, "worker threads")
        ->check(CLI::Range(1, 256));
    verify->add_option("--out", va.out, "write JSON here instead of stdout");
    verify->add_option("--csv", va.csv, "also write a CSV summary here");

    bool catalog_json = false;
    std::string catalog_out;
    CLI::App* catalog =
        app.add_subcommand("catalog", "list built-in scalar functions");
    catalog->add_flag("--json", catalog_json, "emit JSON");
    catalog->add_option("--out", catalog_out,
                        "write output here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (bounds->parsed()) {
            ba.has_s = opt_s->count() > 0;
            ba.has_t = opt_t->count() > 0;
            ba.has_m = opt_m->count() > 0;
            ba.has_M = opt_M->count() > 0;
            return run_bounds(ba);
        }
        if (means->parsed()) return run_means(ma);
        if (kwong->parsed()) return run_kwong(ka);
        if (verify->parsed()) return run_verify(va);
        if (catalog->parsed()) return run_catalog(catalog_json, catalog_out);
    } catch (const opmeans::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const opmeans::CatalogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const opmeans::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_math_failure;
    }
    return exit_usage;
}
