#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

namespace nlheat {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Uniform Cartesian grid on (0,L1) or (0,L1)x(0,L2).
///
/// Only interior nodes carry unknowns; the Dirichlet boundary is implicit
/// and always zero. Node (i, j) sits at ((i+1) h1, (j+1) h2) and is stored
/// row-major, i.e. index = i * n2 + j, so the first axis varies slowest.
class Grid {
public:
    static Grid interval(double length, std::size_t n);
    static Grid rectangle(double length_x, double length_y, std::size_t nx, std::size_t ny);

    int dim() const noexcept { return dim_; }
    double length(int axis) const { return lengths_.at(static_cast<std::size_t>(axis)); }
    std::size_t n(int axis) const { return n_.at(static_cast<std::size_t>(axis)); }
    double h(int axis) const { return h_.at(static_cast<std::size_t>(axis)); }

    std::size_t size() const noexcept { return dim_ == 1 ? n_[0] : n_[0] * n_[1]; }

    /// Product of the spacings; the quadrature weight of one interior node.
    double cell_measure() const noexcept { return dim_ == 1 ? h_[0] : h_[0] * h_[1]; }

    /// Total measure of the interior nodes' cells, size() * cell_measure().
    double interior_measure() const noexcept { return static_cast<double>(size()) * cell_measure(); }

    /// Coordinates of node `index`; the second entry is 0 in 1D.
    std::array<double, 2> coordinate(std::size_t index) const;

    /// Same grid with every axis refined so that h halves (n -> 2n+1).
    Grid refined() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    Grid(int dim, std::array<double, 2> lengths, std::array<std::size_t, 2> n);

    int dim_ = 1;
    std::array<double, 2> lengths_{1.0, 0.0};
    std::array<std::size_t, 2> n_{1, 1};
    std::array<double, 2> h_{0.5, 0.0};
};

/// Real values at the interior nodes of a grid. Immutable once built.
class Field {
public:
    /// Throws InvalidParameter on length mismatch or non-finite entries.
    Field(Grid grid, std::vector<double> values);

    static Field zeros(const Grid& grid);
    static Field constant(const Grid& grid, double c);

    /// Samples f(x) (1D) or f(x, y) (2D) at every interior node.
    template <typename F>
    static Field sample(const Grid& grid, F&& f) {
        constexpr bool unary = std::is_invocable_r_v<double, F&, double>;
        constexpr bool binary = std::is_invocable_r_v<double, F&, double, double>;
        static_assert(unary || binary, "sampler must take (x) or (x, y)");
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto x = grid.coordinate(i);
            if constexpr (unary) {
                v[i] = f(x[0]);
            } else {
                v[i] = f(x[0], x[1]);
            }
        }
        return Field(grid, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    double min() const;
    double max() const;
    bool is_nonnegative() const { return min() >= 0.0; }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Throws GridMismatch unless both grids are equal.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

/// a*f + b*g
Field linear_combination(double a, const Field& f, double b, const Field& g);
Field scaled(double a, const Field& f);
Field operator+(const Field& f, const Field& g);
Field operator-(const Field& f, const Field& g);
/// Pointwise product.
Field hadamard(const Field& f, const Field& g);

/// Discrete L^p norm (cell_measure * sum |f_i|^p)^(1/p); max |f_i| for p = inf.
double norm_lp(const Field& f, double p);

/// Sum over all grid edges, boundary edges included, of (df/h)^2 * cell measure.
/// Equals inner_product(f, L f) for the Dirichlet Laplacian L.
double h1_seminorm_sq(const Field& f);

double inner_product(const Field& f, const Field& g);

/// Pointwise trapezoidal rule over the sample times. Requires at least two
/// samples, times[0] == 0 and strictly increasing times.
Field trapezoid_time_integral(std::span<const double> times, std::span<const Field> samples);

/// Injection of a field from a refined grid (see Grid::refined, possibly
/// applied several times) onto the nodes of `coarse`.
Field restrict_to(const Field& fine, const Grid& coarse);

}  // namespace nlheat
