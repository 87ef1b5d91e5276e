#include "nlheat/evolution.hpp"

#include <cmath>
#include <sstream>

#include "nlheat/errors.hpp"

namespace nlheat {

const char* to_string(Scheme scheme) {
    return scheme == Scheme::implicit_euler ? "implicit_euler" : "crank_nicolson";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "implicit_euler" || name == "ie") {
        return Scheme::implicit_euler;
    }
    if (name == "crank_nicolson" || name == "cn") {
        return Scheme::crank_nicolson;
    }
    throw InvalidParameter("unknown time scheme '" + name + "'");
}

void EvolutionConfig::validate() const {
    if (!(final_time > 0.0) || !std::isfinite(final_time)) {
        std::ostringstream os;
        os << "time.T must be positive and finite, got " << final_time;
        throw InvalidParameter(os.str());
    }
    if (steps < 2) {
        std::ostringstream os;
        os << "time.steps must be at least 2, got " << steps;
        throw InvalidParameter(os.str());
    }
    if (store_every < 1 || steps % store_every != 0) {
        std::ostringstream os;
        os << "time.store_every must be positive and divide time.steps (" << steps << "), got " << store_every;
        throw InvalidParameter(os.str());
    }
}

Field Trajectory::time_integral() const { return trapezoid_time_integral(times, states); }

namespace {

Field step(const DirichletLaplacian& lap, const Field& w, const Field& u, double dt, Scheme scheme) {
    if (scheme == Scheme::implicit_euler) {
        return lap.solve_shifted(w, dt, u);
    }
    std::vector<double> rhs(u.size());
    lap.apply_shifted(w.values(), -0.5 * dt, u.values(), rhs);
    return lap.solve_shifted(w, 0.5 * dt, Field(u.grid(), std::move(rhs)));
}

}  // namespace

Field advance(const DirichletLaplacian& lap, const Field& w, const Field& u, double dt, std::size_t steps,
              Scheme scheme) {
    Field cur = u;
    for (std::size_t k = 0; k < steps; ++k) {
        cur = step(lap, w, cur, dt, scheme);
    }
    return cur;
}

Trajectory evolve(const DirichletLaplacian& lap, const Field& w, const Field& u0, const EvolutionConfig& cfg) {
    cfg.validate();
    require_same_grid(lap.grid(), u0.grid(), "evolve");
    require_same_grid(lap.grid(), w.grid(), "evolve");

    Trajectory traj;
    traj.scheme = cfg.scheme;
    traj.dt = cfg.dt();
    const std::size_t samples = cfg.steps / cfg.store_every + 1;
    traj.times.reserve(samples);
    traj.states.reserve(samples);
    traj.times.push_back(0.0);
    traj.states.push_back(u0);

    Field cur = u0;
    for (std::size_t k = 1; k <= cfg.steps; ++k) {
        cur = step(lap, w, cur, traj.dt, cfg.scheme);
        if (k % cfg.store_every == 0) {
            traj.times.push_back(k == cfg.steps ? cfg.final_time : static_cast<double>(k) * traj.dt);
            traj.states.push_back(cur);
        }
    }
    return traj;
}

PhiResult phi_map(const DirichletLaplacian& lap, const Potential& phi, const Field& u0, const Field& vT,
                  const EvolutionConfig& cfg) {
    const Field w = nemytskii(phi, vT);
    Trajectory traj = evolve(lap, w, u0, cfg);
    Field integral = traj.time_integral();
    return {std::move(integral), std::move(traj)};
}

}  // namespace nlheat
