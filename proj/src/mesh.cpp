#include "nlheat/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlheat/errors.hpp"

namespace nlheat {

namespace {

void check_axis(double length, std::size_t n, const char* axis) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        std::ostringstream os;
        os << "grid length along " << axis << " must be positive and finite, got " << length;
        throw InvalidParameter(os.str());
    }
    if (n < 1) {
        throw InvalidParameter(std::string("grid needs at least one interior node along ") + axis);
    }
}

}  // namespace

Grid::Grid(int dim, std::array<double, 2> lengths, std::array<std::size_t, 2> n)
    : dim_(dim), lengths_(lengths), n_(n) {
    for (int a = 0; a < dim_; ++a) {
        h_[a] = lengths_[a] / static_cast<double>(n_[a] + 1);
    }
}

Grid Grid::interval(double length, std::size_t n) {
    check_axis(length, n, "x");
    return Grid(1, {length, 0.0}, {n, 1});
}

Grid Grid::rectangle(double length_x, double length_y, std::size_t nx, std::size_t ny) {
    check_axis(length_x, nx, "x");
    check_axis(length_y, ny, "y");
    return Grid(2, {length_x, length_y}, {nx, ny});
}

std::array<double, 2> Grid::coordinate(std::size_t index) const {
    if (dim_ == 1) {
        return {static_cast<double>(index + 1) * h_[0], 0.0};
    }
    const std::size_t i = index / n_[1];
    const std::size_t j = index % n_[1];
    return {static_cast<double>(i + 1) * h_[0], static_cast<double>(j + 1) * h_[1]};
}

Grid Grid::refined() const {
    if (dim_ == 1) {
        return interval(lengths_[0], 2 * n_[0] + 1);
    }
    return rectangle(lengths_[0], lengths_[1], 2 * n_[0] + 1, 2 * n_[1] + 1);
}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        std::ostringstream os;
        os << "field has " << values_.size() << " values but the grid has " << grid_.size()
           << " interior nodes";
        throw InvalidParameter(os.str());
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            std::ostringstream os;
            os << "non-finite field value at node " << i;
            throw InvalidParameter(os.str());
        }
    }
}

Field Field::zeros(const Grid& grid) { return Field(grid, std::vector<double>(grid.size(), 0.0)); }

Field Field::constant(const Grid& grid, double c) {
    return Field(grid, std::vector<double>(grid.size(), c));
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }

double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) {
        throw GridMismatch(std::string(what) + ": operands live on different grids");
    }
}

Field linear_combination(double a, const Field& f, double b, const Field& g) {
    require_same_grid(f.grid(), g.grid(), "linear_combination");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = a * f[i] + b * g[i];
    }
    return Field(f.grid(), std::move(v));
}

Field scaled(double a, const Field& f) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) {
        x *= a;
    }
    return Field(f.grid(), std::move(v));
}

Field operator+(const Field& f, const Field& g) { return linear_combination(1.0, f, 1.0, g); }

Field operator-(const Field& f, const Field& g) { return linear_combination(1.0, f, -1.0, g); }

Field hadamard(const Field& f, const Field& g) {
    require_same_grid(f.grid(), g.grid(), "hadamard");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = f[i] * g[i];
    }
    return Field(f.grid(), std::move(v));
}

double norm_lp(const Field& f, double p) {
    if (std::isnan(p) || p < 1.0) {
        std::ostringstream os;
        os << "norm exponent must satisfy p >= 1, got " << p;
        throw InvalidParameter(os.str());
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : f.values()) {
            m = std::max(m, std::abs(x));
        }
        return m;
    }
    // Scale by the max to keep |f|^p representable for large p.
    double scale = 0.0;
    for (double x : f.values()) {
        scale = std::max(scale, std::abs(x));
    }
    if (scale == 0.0) {
        return 0.0;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (double x : f.values()) {
            const double r = x / scale;
            sum += r * r;
        }
        return scale * std::sqrt(f.grid().cell_measure() * sum);
    }
    for (double x : f.values()) {
        sum += std::pow(std::abs(x) / scale, p);
    }
    return scale * std::pow(f.grid().cell_measure() * sum, 1.0 / p);
}

double h1_seminorm_sq(const Field& f) {
    const Grid& g = f.grid();
    const auto v = f.values();
    if (g.dim() == 1) {
        const std::size_t n = g.n(0);
        const double h = g.h(0);
        // n + 1 edges, the outer two touch the zero boundary.
        double sum = v[0] * v[0] + v[n - 1] * v[n - 1];
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double d = v[i + 1] - v[i];
            sum += d * d;
        }
        return sum / (h * h) * g.cell_measure();
    }
    const std::size_t nx = g.n(0);
    const std::size_t ny = g.n(1);
    const double hx = g.h(0);
    const double hy = g.h(1);
    auto at = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> double {
        if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(nx) || j >= static_cast<std::ptrdiff_t>(ny)) {
            return 0.0;
        }
        return v[static_cast<std::size_t>(i) * ny + static_cast<std::size_t>(j)];
    };
    double sx = 0.0;
    double sy = 0.0;
    for (std::ptrdiff_t i = -1; i < static_cast<std::ptrdiff_t>(nx); ++i) {
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(ny); ++j) {
            const double d = at(i + 1, j) - at(i, j);
            sx += d * d;
        }
    }
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nx); ++i) {
        for (std::ptrdiff_t j = -1; j < static_cast<std::ptrdiff_t>(ny); ++j) {
            const double d = at(i, j + 1) - at(i, j);
            sy += d * d;
        }
    }
    return (sx / (hx * hx) + sy / (hy * hy)) * g.cell_measure();
}

double inner_product(const Field& f, const Field& g) {
    require_same_grid(f.grid(), g.grid(), "inner_product");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        sum += f[i] * g[i];
    }
    return f.grid().cell_measure() * sum;
}

Field trapezoid_time_integral(std::span<const double> times, std::span<const Field> samples) {
    if (samples.size() < 2 || times.size() != samples.size()) {
        throw InvalidParameter("time integral needs at least two samples with matching times");
    }
    if (times[0] != 0.0) {
        throw InvalidParameter("time integral samples must start at t = 0");
    }
    const Grid& grid = samples[0].grid();
    std::vector<double> acc(grid.size(), 0.0);
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        const double dt = times[k + 1] - times[k];
        if (!(dt > 0.0)) {
            throw InvalidParameter("time integral sample times must be strictly increasing");
        }
        require_same_grid(grid, samples[k + 1].grid(), "trapezoid_time_integral");
        const auto a = samples[k].values();
        const auto b = samples[k + 1].values();
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += 0.5 * dt * (a[i] + b[i]);
        }
    }
    return Field(grid, std::move(acc));
}

Field restrict_to(const Field& fine, const Grid& coarse) {
    const Grid& g = fine.grid();
    if (g.dim() != coarse.dim()) {
        throw GridMismatch("restrict_to: dimension mismatch");
    }
    std::array<std::size_t, 2> stride{1, 1};
    for (int a = 0; a < g.dim(); ++a) {
        const std::size_t fine_cells = g.n(a) + 1;
        const std::size_t coarse_cells = coarse.n(a) + 1;
        if (g.length(a) != coarse.length(a) || fine_cells % coarse_cells != 0) {
            throw GridMismatch("restrict_to: coarse nodes are not a subset of the fine nodes");
        }
        stride[static_cast<std::size_t>(a)] = fine_cells / coarse_cells;
    }
    std::vector<double> v(coarse.size());
    if (g.dim() == 1) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = fine[(i + 1) * stride[0] - 1];
        }
    } else {
        for (std::size_t i = 0; i < coarse.n(0); ++i) {
            for (std::size_t j = 0; j < coarse.n(1); ++j) {
                const std::size_t fi = (i + 1) * stride[0] - 1;
                const std::size_t fj = (j + 1) * stride[1] - 1;
                v[i * coarse.n(1) + j] = fine[fi * g.n(1) + fj];
            }
        }
    }
    return Field(coarse, std::move(v));
}

}  // namespace nlheat
