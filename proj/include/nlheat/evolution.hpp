#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nlheat/laplacian.hpp"
#include "nlheat/mesh.hpp"
#include "nlheat/potential.hpp"

namespace nlheat {

enum class Scheme { implicit_euler, crank_nicolson };

const char* to_string(Scheme scheme);
/// Accepts "implicit_euler"/"ie" and "crank_nicolson"/"cn".
Scheme parse_scheme(const std::string& name);

struct EvolutionConfig {
    double final_time = 0.1;
    std::size_t steps = 1000;
    Scheme scheme = Scheme::implicit_euler;
    /// Keep every store_every-th state; must divide steps.
    std::size_t store_every = 1;

    double dt() const { return final_time / static_cast<double>(steps); }

    /// Throws InvalidParameter naming the offending field.
    void validate() const;
};

/// Stored samples u(t_k) of a frozen-potential evolution.
struct Trajectory {
    std::vector<double> times;
    std::vector<Field> states;
    Scheme scheme = Scheme::implicit_euler;
    double dt = 0.0;

    const Field& initial() const { return states.front(); }
    const Field& final_state() const { return states.back(); }
    const Grid& grid() const { return states.front().grid(); }

    /// Trapezoidal integral over the stored samples.
    Field time_integral() const;
};

/// Advances u by `steps` time steps of size dt for u' = -(L + diag(w)) u.
Field advance(const DirichletLaplacian& lap, const Field& w, const Field& u, double dt, std::size_t steps,
              Scheme scheme);

/// Discrete analogue of t -> exp(-t (L + diag(w))) u0 on [0, T].
///
/// Implicit Euler: (I + dt A) u_{k+1} = u_k.
/// Crank-Nicolson: (I + dt/2 A) u_{k+1} = (I - dt/2 A) u_k.
/// Only implicit Euler is positivity preserving for every dt.
Trajectory evolve(const DirichletLaplacian& lap, const Field& w, const Field& u0, const EvolutionConfig& cfg);

struct PhiResult {
    Field integral;
    Trajectory trajectory;
};

/// One application of the fixed-point map: freeze w = phi(vT), evolve u0
/// and integrate in time.
PhiResult phi_map(const DirichletLaplacian& lap, const Potential& phi, const Field& u0, const Field& vT,
                  const EvolutionConfig& cfg);

}  // namespace nlheat
