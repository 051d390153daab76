#pragma once

#include <stdexcept>
#include <string>

namespace opmeans {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatchError : Error {
    DimensionMismatchError(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(got)),
          expected(expected), got(got) {}
    std::size_t expected;
    std::size_t got;
};

// Thrown when an operation requires a (strictly) positive matrix.
struct PositivityError : Error {
    PositivityError(const std::string& what_op, double min_eig)
        : Error(what_op + ": operand not positive definite (min eigenvalue " +
                std::to_string(min_eig) + ")"),
          min_eigenvalue(min_eig) {}
    double min_eigenvalue;
};

// Thrown when an eigenvalue falls outside a scalar function's domain.
struct DomainError : Error {
    DomainError(const std::string& function_id, double eigenvalue)
        : Error("function '" + function_id + "' undefined at eigenvalue " +
                std::to_string(eigenvalue)),
          function_id(function_id), eigenvalue(eigenvalue) {}
    std::string function_id;
    double eigenvalue;
};

// Thrown when a scalar function evaluates to a non-finite value.
struct EvaluationError : Error {
    EvaluationError(const std::string& function_id, double point)
        : Error("function '" + function_id + "' not finite at " +
                std::to_string(point)),
          function_id(function_id), point(point) {}
    std::string function_id;
    double point;
};

struct ConvergenceError : Error {
    explicit ConvergenceError(double off_residual)
        : Error("eigensolver failed to converge (off-diagonal residual " +
                std::to_string(off_residual) + ")"),
          off_diagonal_residual(off_residual) {}
    double off_diagonal_residual;
};

struct CatalogError : Error {
    explicit CatalogError(const std::string& id)
        : Error("unknown function id '" + id + "'"), id(id) {}
    std::string id;
};

struct MissingDerivativeError : Error {
    explicit MissingDerivativeError(const std::string& id)
        : Error("function '" + id + "' provides no derivative"), id(id) {}
    std::string id;
};

// Thrown when a function fails the requirements of a mean's representing
// function (f(1) = 1, f > 0 on the probed spectrum).
struct RepresentingFunctionError : Error {
    explicit RepresentingFunctionError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}
