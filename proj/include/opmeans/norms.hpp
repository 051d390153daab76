#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "opmeans/eigen_jacobi.hpp"

namespace opmeans {

// singular values of a Hermitian matrix: |eigenvalues|, descending
inline std::vector<double> singular_values(const HermitianMatrix& a) {
    std::vector<double> s = eig_hermitian(a).eigenvalues;
    for (double& v : s) v = std::abs(v);
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

// sum of the k largest singular values, 1 <= k <= dim
inline double ky_fan_norm(const HermitianMatrix& a, std::size_t k) {
    if (k < 1 || k > a.dim())
        throw std::invalid_argument("ky_fan_norm: k out of range");
    const std::vector<double> s = singular_values(a);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += s[i];
    return sum;
}

// (sum sigma_i^p)^(1/p), p >= 1
inline double schatten_norm(const HermitianMatrix& a, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be >= 1");
    const std::vector<double> s = singular_values(a);
    double sum = 0.0;
    for (double v : s) sum += std::pow(v, p);
    return std::pow(sum, 1.0 / p);
}

}
