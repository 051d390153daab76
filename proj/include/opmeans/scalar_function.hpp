#pragma once

#include <charconv>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "opmeans/errors.hpp"

namespace opmeans {

// Properties a function is claimed to have on (0, inf). Claims drive which
// theorem checks a function participates in; classifiers test them.
struct FunctionClaims {
    bool nonneg_operator_monotone = false;
    bool operator_monotone_decreasing = false;
    bool operator_convex = false;
    bool kwong = false;
    bool representing = false;  // positive operator monotone with f(1) = 1
};

// A scalar function with an id, optional closed-form derivative, claims
// metadata and a domain lower bound (exclusive). Derivatives fall back to a
// 5-point central difference with step x * 1e-5.
class ScalarFunction {
  public:
    using Fn = std::function<double(double)>;

    ScalarFunction() = default;
    ScalarFunction(std::string id, Fn eval, Fn derivative, FunctionClaims claims,
                   double domain_min = 0.0, std::string note = {})
        : id_(std::move(id)), eval_(std::move(eval)),
          deriv_(std::move(derivative)), claims_(claims),
          domain_min_(domain_min), note_(std::move(note)) {}

    const std::string& id() const { return id_; }
    const FunctionClaims& claims() const { return claims_; }
    double domain_min() const { return domain_min_; }
    const std::string& note() const { return note_; }
    bool has_closed_derivative() const { return static_cast<bool>(deriv_); }

    bool in_domain(double x) const { return x > domain_min_; }

    double operator()(double x) const {
        if (!in_domain(x)) throw DomainError(id_, x);
        const double y = eval_(x);
        if (!std::isfinite(y)) throw EvaluationError(id_, x);
        return y;
    }

    double derivative(double x) const {
        if (!in_domain(x)) throw DomainError(id_, x);
        if (deriv_) {
            const double y = deriv_(x);
            if (!std::isfinite(y)) throw EvaluationError(id_, x);
            return y;
        }
        if (!allow_fd_) throw MissingDerivativeError(id_);
        const double h = std::max(std::abs(x), 1e-8) * 1e-5;
        const double f1 = (*this)(x + h), f_1 = (*this)(x - h);
        const double f2 = (*this)(x + 2 * h), f_2 = (*this)(x - 2 * h);
        return (-f2 + 8 * f1 - 8 * f_1 + f_2) / (12 * h);
    }

    ScalarFunction& forbid_fd_derivative() {
        allow_fd_ = false;
        return *this;
    }

  private:
    std::string id_;
    Fn eval_;
    Fn deriv_;
    FunctionClaims claims_;
    double domain_min_ = 0.0;
    bool allow_fd_ = true;
    std::string note_;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

inline double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw CatalogError(std::string(what) + ":" + s);
    return v;
}

}

inline ScalarFunction make_power(double p) {
    FunctionClaims c;
    c.nonneg_operator_monotone = (p >= 0.0 && p <= 1.0);
    c.operator_monotone_decreasing = (p >= -1.0 && p <= 0.0);
    c.operator_convex = (p >= 1.0 && p <= 2.0) || (p >= -1.0 && p <= 0.0);
    c.kwong = (p >= -1.0 && p <= 1.0);
    c.representing = c.nonneg_operator_monotone;
    return ScalarFunction(
        "power:" + detail::format_double(p),
        [p](double x) { return std::pow(x, p); },
        [p](double x) { return p == 0.0 ? 0.0 : p * std::pow(x, p - 1.0); }, c,
        0.0, "x^p");
}

inline ScalarFunction make_identity() {
    FunctionClaims c;
    c.nonneg_operator_monotone = true;
    c.operator_convex = true;  // affine
    c.kwong = true;
    c.representing = true;
    return ScalarFunction(
        "identity", [](double x) { return x; }, [](double) { return 1.0; }, c,
        0.0, "x");
}

inline ScalarFunction make_const1() {
    FunctionClaims c;
    c.nonneg_operator_monotone = true;
    c.operator_monotone_decreasing = true;
    c.operator_convex = true;
    c.kwong = true;
    c.representing = true;
    return ScalarFunction(
        "const1", [](double) { return 1.0; }, [](double) { return 0.0; }, c,
        0.0, "constant 1");
}

inline ScalarFunction make_sqrt() {
    FunctionClaims c;
    c.nonneg_operator_monotone = true;
    c.kwong = true;
    c.representing = true;
    return ScalarFunction(
        "sqrt", [](double x) { return std::sqrt(x); },
        [](double x) { return 0.5 / std::sqrt(x); }, c, 0.0, "x^(1/2)");
}

inline ScalarFunction make_inverse() {
    FunctionClaims c;
    c.operator_monotone_decreasing = true;
    c.operator_convex = true;
    c.kwong = true;
    return ScalarFunction(
        "inverse", [](double x) { return 1.0 / x; },
        [](double x) { return -1.0 / (x * x); }, c, 0.0, "x^(-1)");
}

inline ScalarFunction make_square() {
    FunctionClaims c;
    c.operator_convex = true;
    return ScalarFunction(
        "square", [](double x) { return x * x; },
        [](double x) { return 2.0 * x; }, c,
        -std::numeric_limits<double>::infinity(),
        "x^2; operator convex but not Kwong");
}

inline ScalarFunction make_exp() {
    FunctionClaims c;  // none of the classes hold
    return ScalarFunction(
        "exp", [](double x) { return std::exp(x); },
        [](double x) { return std::exp(x); }, c,
        -std::numeric_limits<double>::infinity(),
        "e^x; neither operator monotone nor Kwong");
}

inline ScalarFunction make_log1p() {
    FunctionClaims c;
    c.nonneg_operator_monotone = true;
    c.kwong = true;
    return ScalarFunction(
        "log1p", [](double x) { return std::log1p(x); },
        [](double x) { return 1.0 / (1.0 + x); }, c, -1.0, "log(1+x)");
}

inline ScalarFunction make_sinh_inv() {
    FunctionClaims c;
    c.kwong = true;
    return ScalarFunction(
        "sinh_inv", [](double x) { return std::asinh(x); },
        [](double x) { return 1.0 / std::sqrt(1.0 + x * x); }, c,
        -std::numeric_limits<double>::infinity(),
        "log(x + sqrt(x^2+1)); Kwong on (0,inf)");
}

inline ScalarFunction make_representing_arith(double alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw CatalogError("representing:arith:" + detail::format_double(alpha));
    FunctionClaims c;
    c.nonneg_operator_monotone = true;
    c.operator_convex = true;
    c.kwong = true;
    c.representing = true;
    return ScalarFunction(
        "representing:arith:" + detail::format_double(alpha),
        [alpha](double x) { return (1.0 - alpha) + alpha * x; },
        [alpha](double) { return alpha; }, c, 0.0,
        "weighted arithmetic mean of 1 and x");
}

inline ScalarFunction make_representing_harm(double alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw CatalogError("representing:harm:" + detail::format_double(alpha));
    FunctionClaims c;
    c.nonneg_operator_monotone = true;
    c.kwong = true;
    c.representing = true;
    return ScalarFunction(
        "representing:harm:" + detail::format_double(alpha),
        [alpha](double x) { return x / ((1.0 - alpha) * x + alpha); },
        [alpha](double x) {
            const double d = (1.0 - alpha) * x + alpha;
            return alpha / (d * d);
        },
        c, 0.0, "weighted harmonic mean of 1 and x");
}

// Fixed instances shown by the catalog listing; power and representing
// entries stand in for their parameter families.
inline std::vector<ScalarFunction> function_catalog() {
    return {make_identity(),
            make_const1(),
            make_sqrt(),
            make_inverse(),
            make_square(),
            make_exp(),
            make_log1p(),
            make_sinh_inv(),
            make_power(-1.0),
            make_power(-0.5),
            make_power(0.3),
            make_power(1.5),
            make_representing_arith(0.5),
            make_representing_harm(0.5)};
}

inline ScalarFunction parse_function(const std::string& id) {
    if (id == "identity") return make_identity();
    if (id == "const1") return make_const1();
    if (id == "sqrt") return make_sqrt();
    if (id == "inverse") return make_inverse();
    if (id == "square") return make_square();
    if (id == "exp") return make_exp();
    if (id == "log1p") return make_log1p();
    if (id == "sinh_inv") return make_sinh_inv();
    constexpr const char* power_prefix = "power:";
    constexpr const char* arith_prefix = "representing:arith:";
    constexpr const char* harm_prefix = "representing:harm:";
    if (id.rfind(power_prefix, 0) == 0)
        return make_power(
            detail::parse_double(id.substr(std::strlen(power_prefix)), "power"));
    if (id.rfind(arith_prefix, 0) == 0)
        return make_representing_arith(
            detail::parse_double(id.substr(std::strlen(arith_prefix)), "arith"));
    if (id.rfind(harm_prefix, 0) == 0)
        return make_representing_harm(
            detail::parse_double(id.substr(std::strlen(harm_prefix)), "harm"));
    throw CatalogError(id);
}

// 1/f, for the Kwong duality check (f Kwong iff 1/f Kwong)
inline ScalarFunction reciprocal_of(const ScalarFunction& f) {
    FunctionClaims c;
    c.kwong = f.claims().kwong;
    return ScalarFunction(
        "recip(" + f.id() + ")", [f](double x) { return 1.0 / f(x); },
        [f](double x) {
            const double v = f(x);
            return -f.derivative(x) / (v * v);
        },
        c, f.domain_min(), "reciprocal of " + f.id());
}

// -f, used to test decreasing monotonicity via the increasing classifier
inline ScalarFunction negation_of(const ScalarFunction& f) {
    return ScalarFunction(
        "neg(" + f.id() + ")", [f](double x) { return -f(x); },
        [f](double x) { return -f.derivative(x); }, FunctionClaims{},
        f.domain_min(), "negation of " + f.id());
}

}
