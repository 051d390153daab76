#pragma once

#include <charconv>
#include <string>

#include <json.hpp>

#include "opmeans/verify.hpp"
#include "opmeans/version.hpp"

namespace opmeans {

using ordered_json = nlohmann::ordered_json;

// Matrix wire format: {"dim": n, "re": [[...]], "im": [[...]]}, the imaginary
// block omitted when identically zero.
inline ordered_json matrix_to_json(const HermitianMatrix& h) {
    const std::size_t n = h.dim();
    ordered_json re = ordered_json::array();
    ordered_json im = ordered_json::array();
    bool any_imag = false;
    for (std::size_t i = 0; i < n; ++i) {
        ordered_json rrow = ordered_json::array();
        ordered_json irow = ordered_json::array();
        for (std::size_t j = 0; j < n; ++j) {
            rrow.push_back(h(i, j).real());
            irow.push_back(h(i, j).imag());
            if (h(i, j).imag() != 0.0) any_imag = true;
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    ordered_json out;
    out["dim"] = n;
    out["re"] = std::move(re);
    if (any_imag) out["im"] = std::move(im);
    return out;
}

inline HermitianMatrix matrix_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
        throw ParseError("matrix: expected an object with dim and re");
    if (!j["dim"].is_number_unsigned() && !j["dim"].is_number_integer())
        throw ParseError("matrix: dim must be an integer");
    const long long dim_ll = j["dim"].get<long long>();
    if (dim_ll < 1 || dim_ll > 512) throw ParseError("matrix: dim out of range");
    const std::size_t n = static_cast<std::size_t>(dim_ll);

    auto read_block = [n](const ordered_json& block, const char* name) {
        if (!block.is_array() || block.size() != n)
            throw ParseError(std::string("matrix: ") + name + " must be " +
                             std::to_string(n) + " rows");
        std::vector<std::vector<double>> rows;
        for (const auto& row : block) {
            if (!row.is_array() || row.size() != n)
                throw ParseError(std::string("matrix: ragged ") + name +
                                 " row");
            std::vector<double> r;
            for (const auto& v : row) {
                if (!v.is_number())
                    throw ParseError(std::string("matrix: non-numeric ") +
                                     name + " entry");
                r.push_back(v.get<double>());
            }
            rows.push_back(std::move(r));
        }
        return rows;
    };

    const auto re = read_block(j["re"], "re");
    std::vector<std::vector<double>> im;
    if (j.contains("im")) im = read_block(j["im"], "im");

    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = cdouble(re[i][k], im.empty() ? 0.0 : im[i][k]);
    return HermitianMatrix::require_hermitian(m);
}

inline ordered_json witness_to_json(const FailureWitness& w) {
    ordered_json j;
    j["trial"] = w.trial;
    j["slack"] = w.slack;
    j["A"] = matrix_to_json(w.A);
    j["B"] = matrix_to_json(w.B);
    j["alpha"] = w.alpha;
    j["beta"] = w.beta;
    j["s"] = w.s;
    j["t"] = w.t;
    j["lambda"] = w.lambda;
    j["mu"] = w.mu;
    return j;
}

inline ordered_json result_to_json(const InequalityResult& r) {
    ordered_json j;
    j["theorem"] = to_string(r.theorem);
    if (r.function_id) j["function"] = *r.function_id;
    if (r.exponent) j["p"] = *r.exponent;
    j["dim"] = r.dim;
    j["trials"] = r.trials;
    j["min_slack"] = r.min_slack;
    if (r.skipped > 0) j["skipped"] = r.skipped;
    ordered_json fails = ordered_json::array();
    for (const FailureWitness& w : r.failures) fails.push_back(witness_to_json(w));
    j["failures"] = std::move(fails);
    return j;
}

// Timing is deliberately not serialized: reports must be byte-identical for
// identical configs, regardless of machine or job count.
inline ordered_json report_to_json(const VerificationReport& rep) {
    ordered_json cfg;
    cfg["version"] = version_string;
    ordered_json entries = ordered_json::array();
    for (const SuiteEntry& e : rep.entries) {
        ordered_json je;
        je["theorem"] = to_string(e.theorem);
        if (e.function_id) je["function"] = *e.function_id;
        if (e.exponent) je["p"] = *e.exponent;
        entries.push_back(std::move(je));
    }
    cfg["checks"] = std::move(entries);
    cfg["dims"] = rep.config.dims;
    cfg["trials"] = rep.config.trials;
    cfg["seed"] = rep.config.seed;
    cfg["m"] = rep.config.m;
    cfg["M"] = rep.config.M;
    cfg["tol"] = rep.config.tol;
    if (rep.config.alpha_fixed)
        cfg["alpha"] = *rep.config.alpha_fixed;
    else
        cfg["alpha"] = nullptr;
    if (rep.config.beta_fixed)
        cfg["beta"] = *rep.config.beta_fixed;
    else
        cfg["beta"] = nullptr;
    if (rep.config.lambda_scale != 1.0)
        cfg["lambda_scale"] = rep.config.lambda_scale;

    ordered_json j;
    j["config"] = std::move(cfg);
    ordered_json results = ordered_json::array();
    for (const InequalityResult& r : rep.results)
        results.push_back(result_to_json(r));
    j["results"] = std::move(results);
    j["pass"] = rep.pass;
    j["elapsed_ms"] = 0;
    return j;
}

namespace detail {

inline std::string csv_label(const InequalityResult& r) {
    std::string s = to_string(r.theorem);
    if (r.function_id) s += "[" + *r.function_id + "]";
    if (r.exponent) s += "[p=" + format_double(*r.exponent) + "]";
    return s;
}

}

inline std::string report_to_csv(const VerificationReport& rep) {
    std::string out = "theorem,trials,dim,min_slack,failures\n";
    for (const InequalityResult& r : rep.results) {
        out += detail::csv_label(r);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += std::to_string(r.dim);
        out += ',';
        out += detail::format_double(r.min_slack);
        out += ',';
        out += std::to_string(r.failures.size());
        out += '\n';
    }
    return out;
}

}
