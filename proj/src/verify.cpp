#include "nlheat/verify.hpp"

#include <algorithm>
#include <cmath>

#include "nlheat/errors.hpp"

namespace nlheat {

namespace {

const Trajectory& trajectory_of(const FixedPointReport& report) {
    if (report.trajectory.states.size() < 2) {
        throw InvalidParameter("verification needs a report with a stored trajectory");
    }
    return report.trajectory;
}

}  // namespace

bool Theorem1Check::pass() const {
    return positivity_pass && std::all_of(norms.begin(), norms.end(), [](const auto& n) { return n.pass; });
}

bool VerificationReport::pass() const {
    return (!theorem1 || theorem1->pass()) && (!energy || energy->pass());
}

Theorem1Check check_theorem1(const FixedPointReport& report, const std::vector<double>& p_list,
                             bool check_positivity) {
    const Trajectory& traj = trajectory_of(report);
    const Field& u0 = traj.initial();
    Theorem1Check out;
    for (double p : p_list) {
        NormMonotonicity nm;
        nm.p = p;
        const double base = norm_lp(u0, p);
        double worst = 0.0;
        for (const Field& u : traj.states) {
            const double n = norm_lp(u, p);
            if (base == 0.0) {
                // Zero datum: anything nonzero is an infinite violation.
                worst = std::max(worst, n == 0.0 ? 0.0 : kInfinity);
            } else {
                worst = std::max(worst, n / base);
            }
        }
        nm.max_ratio = worst;
        nm.pass = worst <= nm.tolerance;
        out.norms.push_back(nm);
    }
    out.positivity_applicable = check_positivity && u0.is_nonnegative();
    if (out.positivity_applicable) {
        double lo = kInfinity;
        for (const Field& u : traj.states) {
            lo = std::min(lo, u.min());
        }
        out.positivity_min = lo;
        out.positivity_pass = lo >= out.positivity_tolerance;
    }
    return out;
}

EnergyCheck check_energy(const FixedPointReport& report, const Potential& phi) {
    const Trajectory& traj = trajectory_of(report);
    const Field& uT = report.uT;
    const Field& u0 = traj.initial();
    const Field& u_final = traj.final_state();
    const double final_time = traj.times.back();

    const Field w = nemytskii(phi, uT);
    double potential_term = 0.0;
    for (std::size_t i = 0; i < uT.size(); ++i) {
        potential_term += w[i] * uT[i] * uT[i];
    }
    potential_term *= uT.grid().cell_measure();

    EnergyCheck out;
    out.lhs = h1_seminorm_sq(uT) + potential_term;
    out.rhs = inner_product(u0 - u_final, uT);
    out.mismatch = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), kResidualFloor);
    out.initial_l2 = norm_lp(u0, 2.0);
    out.bound = 2.0 * final_time * out.initial_l2 * out.initial_l2;
    out.bound_pass = out.lhs <= out.bound * out.tolerance;
    out.final_l2 = norm_lp(u_final, 2.0);
    out.integral_l2 = norm_lp(uT, 2.0);
    out.decay_pass = out.final_l2 <= out.initial_l2 * out.tolerance &&
                     out.integral_l2 <= final_time * out.initial_l2 * out.tolerance;
    return out;
}

EllipticCheck check_elliptic(const FixedPointReport& report, const Potential& phi, const DirichletLaplacian& lap) {
    const Trajectory& traj = trajectory_of(report);
    const Field source = traj.initial() - traj.final_state();
    const Field w = nemytskii(phi, report.uT);
    const Field r = lap.apply(w, report.uT) - source;
    return {norm_lp(r, 2.0) / std::max(norm_lp(source, 2.0), kResidualFloor)};
}

VerificationReport verify_all(const FixedPointReport& report, const Potential& phi, const DirichletLaplacian& lap,
                              bool check_positivity) {
    VerificationReport out;
    out.theorem1 = check_theorem1(report, {2.0, kInfinity}, check_positivity);
    out.energy = check_energy(report, phi);
    out.elliptic = check_elliptic(report, phi, lap);
    return out;
}

}  // namespace nlheat
