#pragma once

// Independent reference computations for the tests: closed forms and brute
// force routes that share no code with the library paths they validate.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "opmeans/complex_matrix.hpp"

namespace oracle {

struct Eig2 {
    double lo, hi;
};

// eigenvalues of [[a, b], [conj(b), c]] for real a, c
inline Eig2 eig2_hermitian(double a, std::complex<double> b, double c) {
    const double tr = a + c;
    const double rad = std::sqrt((a - c) * (a - c) + 4.0 * std::norm(b));
    return {0.5 * (tr - rad), 0.5 * (tr + rad)};
}

// max of ((1-alpha) + alpha x) / x^beta over [s, t], by dense geometric grid
inline double grid_max_f(double s, double t, double alpha, double beta,
                         int points = 4001) {
    double best = 0.0;
    const double step = std::log(t / s) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double x = s * std::exp(step * i);
        const double v = ((1.0 - alpha) + alpha * x) / std::pow(x, beta);
        best = std::max(best, v);
    }
    // the ends exactly, in case the grid missed them
    for (double x : {s, t})
        best = std::max(best,
                        ((1.0 - alpha) + alpha * x) / std::pow(x, beta));
    return best;
}

inline double fd_derivative(const std::function<double(double)>& f, double x) {
    const double h = std::max(std::abs(x), 1e-4) * 1e-6;
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
           (12 * h);
}

// determinant by partial-pivot LU in long double precision; a route fully
// separate from the Jacobi eigensolver
inline std::complex<double> det_lu(const opmeans::Matrix& m) {
    using cld = std::complex<long double>;
    const std::size_t n = m.dim();
    std::vector<cld> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = cld(m(i, j).real(), m(i, j).imag());
    cld det = 1.0L;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a[k * n + j], a[piv * n + j]);
            det = -det;
        }
        const cld pivot = a[k * n + k];
        if (pivot == cld(0.0L)) return 0.0;
        det *= pivot;
        for (std::size_t i = k + 1; i < n; ++i) {
            const cld factor = a[i * n + k] / pivot;
            for (std::size_t j = k; j < n; ++j)
                a[i * n + j] -= factor * a[k * n + j];
        }
    }
    return {static_cast<double>(det.real()), static_cast<double>(det.imag())};
}

inline double trace_real(const opmeans::Matrix& m) {
    double t = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i).real();
    return t;
}

}
