#pragma once

#include <optional>
#include <vector>

#include "nlheat/fixedpoint.hpp"
#include "nlheat/laplacian.hpp"
#include "nlheat/potential.hpp"

namespace nlheat {

inline constexpr double kNormSlack = 1e-10;
inline constexpr double kPositivitySlack = 1e-12;
inline constexpr double kEnergySlack = 1e-8;

struct NormMonotonicity {
    double p = 2.0;
    /// max_k ||u_k||_p / ||u0||_p; 0 for the zero datum.
    double max_ratio = 0.0;
    double tolerance = 1.0 + kNormSlack;
    bool pass = true;
};

/// Contraction and positivity of the computed trajectory.
struct Theorem1Check {
    std::vector<NormMonotonicity> norms;
    /// Only evaluated for a nonnegative datum.
    bool positivity_applicable = false;
    double positivity_min = 0.0;
    double positivity_tolerance = -kPositivitySlack;
    bool positivity_pass = true;

    bool pass() const;
};

/// grad/potential energy of uT against the work done by the datum.
struct EnergyCheck {
    double lhs = 0.0;       ///< |uT|_{H1}^2 + sum phi(uT) uT^2
    double rhs = 0.0;       ///< (u0 - u(T), uT)
    double mismatch = 0.0;  ///< |lhs - rhs| / max(|rhs|, eps)
    double bound = 0.0;     ///< 2 T ||u0||_2^2
    bool bound_pass = true;
    double final_l2 = 0.0;    ///< ||u(T)||_2, must not exceed ||u0||_2
    double initial_l2 = 0.0;
    double integral_l2 = 0.0; ///< ||uT||_2, must not exceed T ||u0||_2
    bool decay_pass = true;
    double tolerance = 1.0 + kEnergySlack;

    bool pass() const { return bound_pass && decay_pass; }
};

/// Relative residual of uT in the stationary problem L uT + phi(uT) uT = u0 - u(T).
struct EllipticCheck {
    double residual = 0.0;
};

struct VerificationReport {
    std::optional<Theorem1Check> theorem1;
    std::optional<EnergyCheck> energy;
    std::optional<EllipticCheck> elliptic;

    /// Every flagged check passes; the refinement-dependent quantities
    /// (energy mismatch, elliptic residual) carry no flag.
    bool pass() const;
};

Theorem1Check check_theorem1(const FixedPointReport& report, const std::vector<double>& p_list = {2.0, kInfinity},
                             bool check_positivity = true);

EnergyCheck check_energy(const FixedPointReport& report, const Potential& phi);

EllipticCheck check_elliptic(const FixedPointReport& report, const Potential& phi, const DirichletLaplacian& lap);

VerificationReport verify_all(const FixedPointReport& report, const Potential& phi, const DirichletLaplacian& lap,
                              bool check_positivity = true);

}  // namespace nlheat
