#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's solvers; matrices are assembled from the stencil formula.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Composite midpoint rule with m cells.
inline double midpoint(const std::function<double(double)>& f, double a, double b, std::size_t m) {
    const double h = (b - a) / static_cast<double>(m);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        s += f(a + (static_cast<double>(i) + 0.5) * h);
    }
    return s * h;
}

using Matrix = std::vector<std::vector<double>>;

/// Dense 1D Dirichlet Laplacian on n interior nodes of (0, length).
inline Matrix dense_laplacian_1d(std::size_t n, double length) {
    const double h = length / static_cast<double>(n + 1);
    Matrix a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = 2.0 / (h * h);
        if (i > 0) a[i][i - 1] = -1.0 / (h * h);
        if (i + 1 < n) a[i][i + 1] = -1.0 / (h * h);
    }
    return a;
}

/// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Matrix a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        }
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        if (a[c][c] == 0.0) throw std::runtime_error("singular");
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            if (f == 0.0) continue;
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

/// Smallest eigenvalue of an SPD matrix by power iteration on its inverse.
inline double smallest_eigenvalue(const Matrix& a, int iterations) {
    const std::size_t n = a.size();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i % 7);
    double mu = 0.0;
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> w = dense_solve(a, v);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            num += w[i] * v[i];
            den += v[i] * v[i];
        }
        mu = num / den;  // Rayleigh quotient of the inverse
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    }
    return 1.0 / mu;
}

/// Integral over [0, T] of exp(-rate t): (1 - e^{-rate T}) / rate.
inline double decay_integral(double rate, double final_time) {
    return (1.0 - std::exp(-rate * final_time)) / rate;
}

/// Uniform samples in [lo, hi] for hand-rolled property tests.
inline std::vector<double> uniform(std::mt19937_64& gen, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(gen);
    return v;
}

}  // namespace oracle
