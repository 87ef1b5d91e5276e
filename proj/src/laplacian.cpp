#include "nlheat/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "nlheat/errors.hpp"

namespace nlheat {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

}  // namespace

DirichletLaplacian::DirichletLaplacian(Grid grid) : grid_(grid) {
    const double hx = grid_.h(0);
    off_x_ = -1.0 / (hx * hx);
    diagonal_ = 2.0 / (hx * hx);
    if (grid_.dim() == 2) {
        const double hy = grid_.h(1);
        off_y_ = -1.0 / (hy * hy);
        diagonal_ += 2.0 / (hy * hy);
    }
}

double DirichletLaplacian::off_diagonal(int axis) const {
    if (axis == 0) {
        return off_x_;
    }
    if (axis == 1 && grid_.dim() == 2) {
        return off_y_;
    }
    throw InvalidParameter("off_diagonal: axis out of range");
}

double DirichletLaplacian::entry(std::size_t row, std::size_t col) const {
    if (row == col) {
        return diagonal_;
    }
    if (grid_.dim() == 1) {
        return (row + 1 == col || col + 1 == row) ? off_x_ : 0.0;
    }
    const std::size_t ny = grid_.n(1);
    const std::size_t ri = row / ny, rj = row % ny;
    const std::size_t ci = col / ny, cj = col % ny;
    if (rj == cj && (ri + 1 == ci || ci + 1 == ri)) {
        return off_x_;
    }
    if (ri == ci && (rj + 1 == cj || cj + 1 == rj)) {
        return off_y_;
    }
    return 0.0;
}

double DirichletLaplacian::first_eigenvalue() const {
    double lambda = 0.0;
    for (int a = 0; a < grid_.dim(); ++a) {
        const double h = grid_.h(a);
        const double s = std::sin(std::numbers::pi * h / (2.0 * grid_.length(a)));
        lambda += 4.0 / (h * h) * s * s;
    }
    return lambda;
}

void DirichletLaplacian::apply_raw(std::span<const double> in, std::span<double> out) const {
    if (grid_.dim() == 1) {
        const std::size_t n = in.size();
        for (std::size_t i = 0; i < n; ++i) {
            double s = diagonal_ * in[i];
            if (i > 0) {
                s += off_x_ * in[i - 1];
            }
            if (i + 1 < n) {
                s += off_x_ * in[i + 1];
            }
            out[i] = s;
        }
        return;
    }
    const std::size_t nx = grid_.n(0);
    const std::size_t ny = grid_.n(1);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const std::size_t k = i * ny + j;
            double s = diagonal_ * in[k];
            if (i > 0) {
                s += off_x_ * in[k - ny];
            }
            if (i + 1 < nx) {
                s += off_x_ * in[k + ny];
            }
            if (j > 0) {
                s += off_y_ * in[k - 1];
            }
            if (j + 1 < ny) {
                s += off_y_ * in[k + 1];
            }
            out[k] = s;
        }
    }
}

Field DirichletLaplacian::apply(const Field& f) const {
    require_same_grid(grid_, f.grid(), "DirichletLaplacian::apply");
    std::vector<double> out(f.size());
    apply_raw(f.values(), out);
    return Field(grid_, std::move(out));
}

Field DirichletLaplacian::apply(const Field& w, const Field& f) const {
    require_same_grid(grid_, f.grid(), "DirichletLaplacian::apply");
    require_same_grid(grid_, w.grid(), "DirichletLaplacian::apply");
    std::vector<double> out(f.size());
    apply_raw(f.values(), out);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += w[i] * f[i];
    }
    return Field(grid_, std::move(out));
}

void DirichletLaplacian::apply_shifted(std::span<const double> w, double tau,
                                       std::span<const double> in, std::span<double> out) const {
    apply_raw(in, out);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = in[i] + tau * (out[i] + w[i] * in[i]);
    }
}

Field DirichletLaplacian::solve_shifted(const Field& w, double tau, const Field& b) const {
    require_same_grid(grid_, w.grid(), "solve_shifted");
    require_same_grid(grid_, b.grid(), "solve_shifted");
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        std::ostringstream os;
        os << "solve_shifted: tau must be positive, got " << tau;
        throw InvalidParameter(os.str());
    }
    std::vector<double> x(b.size(), 0.0);
    if (grid_.dim() == 1) {
        solve_tridiagonal(w.values(), tau, b.values(), x);
    } else {
        solve_cg(w.values(), tau, b.values(), x);
    }
    return Field(grid_, std::move(x));
}

void DirichletLaplacian::solve_tridiagonal(std::span<const double> w, double tau,
                                           std::span<const double> b, std::span<double> x) const {
    const std::size_t n = b.size();
    const double off = tau * off_x_;
    std::vector<double> c_star(n);
    std::vector<double> d_star(n);

    auto pivot_check = [&](double m, std::size_t i) {
        if (!(std::abs(m) > 1e-300) || !std::isfinite(m)) {
            std::ostringstream os;
            os << "tridiagonal elimination hit a vanishing pivot at row " << i;
            throw SolverFailure(os.str(), kInfinity);
        }
    };

    double m = 1.0 + tau * (diagonal_ + w[0]);
    pivot_check(m, 0);
    c_star[0] = off / m;
    d_star[0] = b[0] / m;
    for (std::size_t i = 1; i < n; ++i) {
        m = 1.0 + tau * (diagonal_ + w[i]) - off * c_star[i - 1];
        pivot_check(m, i);
        c_star[i] = off / m;
        d_star[i] = (b[i] - off * d_star[i - 1]) / m;
    }
    x[n - 1] = d_star[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d_star[i] - c_star[i] * x[i + 1];
    }
}

void DirichletLaplacian::solve_cg(std::span<const double> w, double tau, std::span<const double> b,
                                  std::span<double> x) const {
    const std::size_t n = b.size();
    const double b_norm = std::sqrt(dot(b, b));
    if (b_norm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return;
    }
    const double target = kRelativeTolerance * b_norm;

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> p(r);
    std::vector<double> ap(n);
    std::fill(x.begin(), x.end(), 0.0);
    double rr = dot(r, r);

    const std::size_t max_iter = 10 * n;
    for (std::size_t it = 0; it < max_iter; ++it) {
        if (std::sqrt(rr) <= target) {
            return;
        }
        apply_shifted(w, tau, p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) {
            throw SolverFailure("conjugate gradient: shifted operator is not positive definite",
                                std::sqrt(rr) / b_norm);
        }
        const double alpha = rr / pap;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double rr_new = dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = r[i] + beta * p[i];
        }
    }
    if (std::sqrt(rr) <= target) {
        return;
    }
    std::ostringstream os;
    os << "conjugate gradient did not converge in " << max_iter << " iterations";
    throw SolverFailure(os.str(), std::sqrt(rr) / b_norm);
}

}  // namespace nlheat
