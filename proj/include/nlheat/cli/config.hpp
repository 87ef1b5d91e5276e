#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "nlheat/evolution.hpp"
#include "nlheat/fixedpoint.hpp"
#include "nlheat/laplacian.hpp"
#include "nlheat/mesh.hpp"
#include "nlheat/potential.hpp"

namespace nlheat::cli {

enum class Mode { solve, probe, convergence_study, sweep };

const char* to_string(Mode mode);
Mode parse_mode(const std::string& name);

enum class Refinement {
    space_time,  ///< (h, dt) -> (h/2, dt/4)
    time,        ///< dt -> dt/2 on a fixed grid
    space,       ///< h -> h/2 at fixed dt
};

const char* to_string(Refinement r);

struct DomainConfig {
    int dim = 1;
    std::vector<double> lengths{1.0};
    std::vector<std::size_t> n{199};
};

/// Initial datum u0. `name` is one of sine_mode, gaussian, constant, from_file.
struct InitialConfig {
    std::string name = "sine_mode";
    std::vector<int> k{1};        ///< sine_mode wave numbers per axis
    double amplitude = 1.0;       ///< sine_mode, gaussian
    std::vector<double> center;   ///< gaussian; empty = domain centre
    double width = 0.1;           ///< gaussian standard deviation
    double c = 0.0;               ///< constant
    std::string path;             ///< from_file, relative to the config file
    /// Check positivity of the trajectory whenever u0 >= 0.
    bool sign_check = true;
};

struct FixedPointSection {
    double tol = 1e-10;
    std::size_t max_iter = 200;
    double damping = 1.0;
    std::size_t starts = 5;
    std::string initial_guess = "zero";
    std::uint64_t seed = 0;
};

struct OutputConfig {
    std::string dir = "nlheat_out";
    std::vector<std::string> formats{"csv", "json"};
    /// Also export the trajectory as CSV when "csv" is requested; the
    /// binary trajectory is written whenever "bin" is requested.
    bool trajectory = false;
};

struct ConvergenceConfig {
    std::size_t levels = 3;
    Refinement refine = Refinement::space_time;
};

struct SweepConfig {
    std::string axis = "amplitude";
    std::vector<double> values;
};

struct RunConfig {
    Mode mode = Mode::solve;
    DomainConfig domain;
    EvolutionConfig time;
    std::string potential = "zero";
    std::vector<double> potential_params;
    InitialConfig initial;
    FixedPointSection fixedpoint;
    OutputConfig output;
    ConvergenceConfig convergence;
    SweepConfig sweep;
    /// Directory relative paths in the config resolve against.
    std::filesystem::path base_dir;

    bool wants(const std::string& format) const;
};

/// Parses and validates a config document. Throws ConfigError naming the key.
RunConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

/// Throws IoError when unreadable, ConfigError when not valid JSON or invalid.
RunConfig load_config(const std::filesystem::path& path);

/// Round-trips through parse_config.
nlohmann::json config_to_json(const RunConfig& cfg);

/// Everything a single fixed-point run needs, built from a RunConfig.
struct Problem {
    Grid grid;
    DirichletLaplacian lap;
    Potential phi;
    Field u0;
    EvolutionConfig evolution;
    PicardConfig picard;
    bool sign_check = true;
};

/// `amplitude_scale` multiplies the configured datum (used by sweeps).
Problem build_problem(const RunConfig& cfg, double amplitude_scale = 1.0);

Grid make_grid(const DomainConfig& d);

}  // namespace nlheat::cli
