#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlheat/evolution.hpp"
#include "nlheat/laplacian.hpp"
#include "nlheat/mesh.hpp"
#include "nlheat/potential.hpp"

namespace nlheat {

enum class InitialGuess { zero, scaled_datum, supplied };

const char* to_string(InitialGuess guess);
InitialGuess parse_initial_guess(const std::string& name);

struct PicardConfig {
    double tol = 1e-10;
    std::size_t max_iter = 200;
    /// v+ = (1 - damping) v + damping Phi(v)
    double damping = 1.0;
    InitialGuess initial_guess = InitialGuess::zero;
    std::optional<Field> supplied_guess;

    void validate() const;
};

/// Floor for relative residual denominators.
inline constexpr double kResidualFloor = 1e-300;

/// Smallness indicator c(Omega) S0 L(S0) below which two fixed points must coincide.
struct UniquenessThreshold {
    double s0 = 0.0;  ///< T * ||u0||_inf
    LipschitzEstimate lipschitz;
    double c_omega = 0.0;            ///< 1 / lambda_1 of the continuous domain
    double discrete_lambda1 = 0.0;   ///< lambda_1 of the stencil, for reference
    double product = 0.0;            ///< NaN when not applicable

    bool applicable() const noexcept { return lipschitz.applicable(); }
    bool satisfied() const noexcept { return applicable() && product < 1.0; }
};

/// 1/lambda_1 with lambda_1 = pi^2 sum_a 1/L_a^2.
double poincare_constant(const Grid& grid);

UniquenessThreshold uniqueness_threshold(const Potential& phi, const Field& u0, double final_time);

struct FixedPointReport {
    Field uT;
    Trajectory trajectory;  ///< evolution behind the last Phi evaluation
    std::size_t iterations = 0;
    std::vector<double> residual_history;
    std::vector<double> contraction_estimates;
    bool converged = false;
    /// Set when an iteration aborted on an evaluation or solver error.
    std::string failure;
    double s0_inf = 0.0;  ///< T ||u0||_inf
    double s0_p = 0.0;    ///< T ||u0||_2
    UniquenessThreshold threshold;
    /// max_k ||v^k||_inf over all iterates, the initial guess included.
    double max_iterate_sup = 0.0;
    double tol = 0.0;
    double damping = 1.0;

    double final_residual() const { return residual_history.empty() ? 0.0 : residual_history.back(); }
};

/// Damped Picard iteration for uT = Phi(uT).
///
/// Stops once ||v^{k+1} - v^k||_2 / max(||v^k||_2, eps) <= tol. Running out
/// of iterations is reported through `converged`, never thrown. On return
/// uT is the last Phi output, so it is exactly the time integral of the
/// stored trajectory.
FixedPointReport picard_solve(const DirichletLaplacian& lap, const Potential& phi, const Field& u0,
                              const EvolutionConfig& ecfg, const PicardConfig& pcfg);

/// Relative L2 distance ||Phi(uT) - uT|| / ||uT|| after one more evaluation.
double fixed_point_defect(const DirichletLaplacian& lap, const Potential& phi, const Field& u0,
                          const EvolutionConfig& ecfg, const Field& uT);

struct ProbeRun {
    std::string label;
    Field uT;
    bool converged = false;
    std::size_t iterations = 0;
    double final_residual = 0.0;
    std::vector<double> contraction_estimates;
};

struct ProbeReport {
    std::vector<ProbeRun> runs;
    /// Max pairwise ||a - b||_2 over converged runs.
    double max_distance = 0.0;
    /// Max pairwise ||a - b||_2 / max(||a||_2, ||b||_2, eps).
    double max_relative_distance = 0.0;
    bool all_converged = true;
    std::uint64_t seed = 0;
    std::string generator = "mt19937_64";
    UniquenessThreshold threshold;
};

/// Runs picard_solve from zero, from T*u0 and from seeded uniform random
/// fields in [-S0, S0], and compares the limits. Requires n_starts >= 2.
ProbeReport uniqueness_probe(const DirichletLaplacian& lap, const Potential& phi, const Field& u0,
                             const EvolutionConfig& ecfg, const PicardConfig& pcfg, std::size_t n_starts,
                             std::uint64_t seed, std::size_t threads = 0);

/// Seeded uniform field with entries in [-bound, bound].
Field random_field(const Grid& grid, double bound, std::uint64_t seed);

}  // namespace nlheat
