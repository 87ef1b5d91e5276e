#include "nlheat/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "nlheat/errors.hpp"
#include "nlheat/parallel.hpp"

namespace nlheat {

const char* to_string(InitialGuess guess) {
    switch (guess) {
        case InitialGuess::zero:
            return "zero";
        case InitialGuess::scaled_datum:
            return "scaled_datum";
        case InitialGuess::supplied:
            return "supplied";
    }
    return "unknown";
}

InitialGuess parse_initial_guess(const std::string& name) {
    if (name == "zero") {
        return InitialGuess::zero;
    }
    if (name == "scaled_datum") {
        return InitialGuess::scaled_datum;
    }
    if (name == "supplied") {
        return InitialGuess::supplied;
    }
    throw InvalidParameter("unknown initial guess '" + name + "'");
}

void PicardConfig::validate() const {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw InvalidParameter("fixedpoint.tol must be positive");
    }
    if (max_iter < 1) {
        throw InvalidParameter("fixedpoint.max_iter must be at least 1");
    }
    if (!(damping > 0.0 && damping <= 1.0)) {
        std::ostringstream os;
        os << "fixedpoint.damping must lie in (0, 1], got " << damping;
        throw InvalidParameter(os.str());
    }
    if (initial_guess == InitialGuess::supplied && !supplied_guess) {
        throw InvalidParameter("fixedpoint: initial guess 'supplied' needs a field");
    }
}

double poincare_constant(const Grid& grid) {
    double lambda = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
        lambda += 1.0 / (grid.length(a) * grid.length(a));
    }
    return 1.0 / (std::numbers::pi * std::numbers::pi * lambda);
}

UniquenessThreshold uniqueness_threshold(const Potential& phi, const Field& u0, double final_time) {
    UniquenessThreshold t;
    t.s0 = final_time * norm_lp(u0, kInfinity);
    t.lipschitz = phi.lipschitz_on(t.s0);
    t.c_omega = poincare_constant(u0.grid());
    t.discrete_lambda1 = DirichletLaplacian(u0.grid()).first_eigenvalue();
    t.product = t.lipschitz.applicable() ? t.c_omega * t.s0 * t.lipschitz.value
                                         : std::numeric_limits<double>::quiet_NaN();
    return t;
}

namespace {

Field initial_iterate(const PicardConfig& pcfg, const Field& u0, double final_time) {
    switch (pcfg.initial_guess) {
        case InitialGuess::zero:
            return Field::zeros(u0.grid());
        case InitialGuess::scaled_datum:
            return scaled(final_time, u0);
        case InitialGuess::supplied:
            require_same_grid(u0.grid(), pcfg.supplied_guess->grid(), "picard_solve initial guess");
            return *pcfg.supplied_guess;
    }
    return Field::zeros(u0.grid());
}

}  // namespace

FixedPointReport picard_solve(const DirichletLaplacian& lap, const Potential& phi, const Field& u0,
                              const EvolutionConfig& ecfg, const PicardConfig& pcfg) {
    ecfg.validate();
    pcfg.validate();
    require_same_grid(lap.grid(), u0.grid(), "picard_solve");

    Field v = initial_iterate(pcfg, u0, ecfg.final_time);
    std::optional<Field> last_phi;
    Trajectory last_traj;
    std::vector<double> history;
    std::vector<double> ratios;
    double max_sup = norm_lp(v, kInfinity);
    bool converged = false;
    std::string failure;

    for (std::size_t k = 0; k < pcfg.max_iter; ++k) {
        try {
            PhiResult res = phi_map(lap, phi, u0, v, ecfg);
            Field next = pcfg.damping == 1.0 ? res.integral
                                             : linear_combination(1.0 - pcfg.damping, v, pcfg.damping, res.integral);
            const double r = norm_lp(next - v, 2.0) / std::max(norm_lp(v, 2.0), kResidualFloor);
            if (!history.empty()) {
                ratios.push_back(r / std::max(history.back(), kResidualFloor));
            }
            history.push_back(r);
            max_sup = std::max(max_sup, norm_lp(next, kInfinity));
            last_phi = std::move(res.integral);
            last_traj = std::move(res.trajectory);
            v = std::move(next);
            if (r <= pcfg.tol) {
                converged = true;
                break;
            }
        } catch (const EvaluationError& e) {
            failure = e.what();
            break;
        } catch (const SolverFailure& e) {
            failure = e.what();
            break;
        } catch (const InvalidParameter& e) {
            // Non-finite iterate.
            failure = e.what();
            break;
        }
    }

    FixedPointReport report{
        .uT = last_phi ? *last_phi : v,
        .trajectory = std::move(last_traj),
        .iterations = history.size(),
        .residual_history = std::move(history),
        .contraction_estimates = std::move(ratios),
        .converged = converged,
        .failure = std::move(failure),
        .s0_inf = ecfg.final_time * norm_lp(u0, kInfinity),
        .s0_p = ecfg.final_time * norm_lp(u0, 2.0),
        .threshold = uniqueness_threshold(phi, u0, ecfg.final_time),
        .max_iterate_sup = max_sup,
        .tol = pcfg.tol,
        .damping = pcfg.damping,
    };
    return report;
}

double fixed_point_defect(const DirichletLaplacian& lap, const Potential& phi, const Field& u0,
                          const EvolutionConfig& ecfg, const Field& uT) {
    const PhiResult res = phi_map(lap, phi, u0, uT, ecfg);
    return norm_lp(res.integral - uT, 2.0) / std::max(norm_lp(uT, 2.0), kResidualFloor);
}

Field random_field(const Grid& grid, double bound, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> v(grid.size());
    for (double& x : v) {
        // 53 random bits -> [0, 1), independent of the library's distributions.
        const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        x = bound * (2.0 * unit - 1.0);
    }
    return Field(grid, std::move(v));
}

ProbeReport uniqueness_probe(const DirichletLaplacian& lap, const Potential& phi, const Field& u0,
                             const EvolutionConfig& ecfg, const PicardConfig& pcfg, std::size_t n_starts,
                             std::uint64_t seed, std::size_t threads) {
    if (n_starts < 2) {
        throw InvalidParameter("uniqueness_probe needs at least two starts");
    }
    ecfg.validate();
    const double s0 = ecfg.final_time * norm_lp(u0, kInfinity);

    std::vector<std::string> labels;
    std::vector<Field> guesses;
    labels.emplace_back("zero");
    guesses.push_back(Field::zeros(u0.grid()));
    labels.emplace_back("scaled_datum");
    guesses.push_back(scaled(ecfg.final_time, u0));
    for (std::size_t s = 2; s < n_starts; ++s) {
        labels.push_back("random_" + std::to_string(s - 2));
        guesses.push_back(random_field(u0.grid(), s0, seed + (s - 2)));
    }

    std::vector<std::optional<ProbeRun>> slots(n_starts);
    parallel_for(n_starts, threads, [&](std::size_t i) {
        PicardConfig cfg = pcfg;
        cfg.initial_guess = InitialGuess::supplied;
        cfg.supplied_guess = guesses[i];
        FixedPointReport rep = picard_solve(lap, phi, u0, ecfg, cfg);
        slots[i] = ProbeRun{labels[i], std::move(rep.uT), rep.converged, rep.iterations, rep.final_residual(),
                            std::move(rep.contraction_estimates)};
    });

    ProbeReport out;
    out.seed = seed;
    out.threshold = uniqueness_threshold(phi, u0, ecfg.final_time);
    for (auto& s : slots) {
        out.all_converged = out.all_converged && s->converged;
        out.runs.push_back(std::move(*s));
    }
    for (std::size_t i = 0; i < out.runs.size(); ++i) {
        for (std::size_t j = i + 1; j < out.runs.size(); ++j) {
            const ProbeRun& a = out.runs[i];
            const ProbeRun& b = out.runs[j];
            if (!a.converged || !b.converged) {
                continue;
            }
            const double d = norm_lp(a.uT - b.uT, 2.0);
            const double scale = std::max({norm_lp(a.uT, 2.0), norm_lp(b.uT, 2.0), kResidualFloor});
            out.max_distance = std::max(out.max_distance, d);
            out.max_relative_distance = std::max(out.max_relative_distance, d / scale);
        }
    }
    return out;
}

}  // namespace nlheat
