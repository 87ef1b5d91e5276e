#pragma once

#include <cstddef>
#include <span>

#include "nlheat/mesh.hpp"

namespace nlheat {

/// Finite-difference -Laplacian with homogeneous Dirichlet data.
///
/// 3-point stencil in 1D, 5-point in 2D. Row diagonal sum_a 2/h_a^2,
/// -1/h_a^2 to each axis neighbour; neighbours on the boundary are dropped.
/// The matrix is a symmetric positive definite M-matrix.
class DirichletLaplacian {
public:
    explicit DirichletLaplacian(Grid grid);

    const Grid& grid() const noexcept { return grid_; }
    double diagonal() const noexcept { return diagonal_; }
    /// Off-diagonal coupling along `axis` (negative).
    double off_diagonal(int axis) const;

    /// Matrix entry (row, col); zero outside the stencil.
    double entry(std::size_t row, std::size_t col) const;

    /// Closed-form smallest eigenvalue sum_a (4/h_a^2) sin^2(pi h_a / (2 L_a)).
    double first_eigenvalue() const;

    Field apply(const Field& f) const;

    /// (L + diag(w)) f
    Field apply(const Field& w, const Field& f) const;

    /// Solves (I + tau (L + diag(w))) x = b to relative residual 1e-10.
    ///
    /// Tridiagonal elimination in 1D, unpreconditioned CG in 2D capped at
    /// 10 * size() iterations. Throws SolverFailure carrying the residual
    /// when CG stalls or elimination meets a vanishing pivot.
    Field solve_shifted(const Field& w, double tau, const Field& b) const;

    /// out = in + tau (L + diag(w)) in, on raw node arrays.
    void apply_shifted(std::span<const double> w, double tau, std::span<const double> in,
                       std::span<double> out) const;

    static constexpr double kRelativeTolerance = 1e-10;

private:
    void apply_raw(std::span<const double> in, std::span<double> out) const;
    void solve_tridiagonal(std::span<const double> w, double tau, std::span<const double> b,
                           std::span<double> x) const;
    void solve_cg(std::span<const double> w, double tau, std::span<const double> b,
                  std::span<double> x) const;

    Grid grid_;
    double diagonal_ = 0.0;
    double off_x_ = 0.0;
    double off_y_ = 0.0;
};

/// Builds the operator; kept as a free function to mirror the other modules.
inline DirichletLaplacian assemble(const Grid& grid) { return DirichletLaplacian(grid); }

}  // namespace nlheat
