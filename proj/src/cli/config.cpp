#include "nlheat/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nlheat/errors.hpp"
#include "nlheat/io.hpp"

namespace nlheat::cli {

using nlohmann::json;

const char* to_string(Mode mode) {
    switch (mode) {
        case Mode::solve:
            return "solve";
        case Mode::probe:
            return "probe";
        case Mode::convergence_study:
            return "convergence_study";
        case Mode::sweep:
            return "sweep";
    }
    return "unknown";
}

Mode parse_mode(const std::string& name) {
    for (Mode m : {Mode::solve, Mode::probe, Mode::convergence_study, Mode::sweep}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw ConfigError("mode", "unknown mode '" + name + "'");
}

const char* to_string(Refinement r) {
    switch (r) {
        case Refinement::space_time:
            return "space_time";
        case Refinement::time:
            return "time";
        case Refinement::space:
            return "space";
    }
    return "unknown";
}

bool RunConfig::wants(const std::string& format) const {
    return std::find(output.formats.begin(), output.formats.end(), format) != output.formats.end();
}

namespace {

/// Reads j[key] as T when present, reporting type errors against `path.key`.
template <typename T>
void read(const json& j, const char* key, T& out, const std::string& path) {
    if (!j.contains(key)) {
        return;
    }
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(path + key, std::string("wrong type (") + e.what() + ")");
    }
}

const json& section(const json& j, const char* key) {
    static const json empty = json::object();
    if (!j.contains(key)) {
        return empty;
    }
    if (!j.at(key).is_object()) {
        throw ConfigError(key, "must be an object");
    }
    return j.at(key);
}

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) {
        throw ConfigError(field, what);
    }
}

std::string describe(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

RunConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) {
        throw ConfigError("<root>", "config must be a JSON object");
    }
    RunConfig cfg;
    cfg.base_dir = base_dir;

    std::string mode = to_string(cfg.mode);
    read(j, "mode", mode, "");
    cfg.mode = parse_mode(mode);

    const json& d = section(j, "domain");
    read(d, "dim", cfg.domain.dim, "domain.");
    require(cfg.domain.dim == 1 || cfg.domain.dim == 2, "domain.dim", "must be 1 or 2");
    if (cfg.domain.dim == 2 && !d.contains("lengths")) {
        cfg.domain.lengths = {1.0, 1.0};
    }
    if (cfg.domain.dim == 2 && !d.contains("n")) {
        cfg.domain.n = {31, 31};
    }
    read(d, "lengths", cfg.domain.lengths, "domain.");
    read(d, "n", cfg.domain.n, "domain.");
    require(cfg.domain.lengths.size() == static_cast<std::size_t>(cfg.domain.dim), "domain.lengths",
            "needs one entry per axis");
    require(cfg.domain.n.size() == static_cast<std::size_t>(cfg.domain.dim), "domain.n", "needs one entry per axis");
    for (double l : cfg.domain.lengths) {
        require(l > 0.0 && std::isfinite(l), "domain.lengths", "entries must be positive, got " + describe(l));
    }
    for (std::size_t n : cfg.domain.n) {
        require(n >= 1, "domain.n", "entries must be at least 1");
    }

    const json& t = section(j, "time");
    read(t, "T", cfg.time.final_time, "time.");
    long long steps = static_cast<long long>(cfg.time.steps);
    read(t, "steps", steps, "time.");
    require(cfg.time.final_time > 0.0 && std::isfinite(cfg.time.final_time), "time.T",
            "must be positive, got " + describe(cfg.time.final_time));
    require(steps >= 2, "time.steps", "must be at least 2, got " + std::to_string(steps));
    cfg.time.steps = static_cast<std::size_t>(steps);
    std::string scheme = to_string(cfg.time.scheme);
    read(t, "scheme", scheme, "time.");
    try {
        cfg.time.scheme = parse_scheme(scheme);
    } catch (const InvalidParameter& e) {
        throw ConfigError("time.scheme", e.what());
    }
    long long store_every = 1;
    read(t, "store_every", store_every, "time.");
    require(store_every >= 1 && static_cast<std::size_t>(store_every) <= cfg.time.steps &&
                cfg.time.steps % static_cast<std::size_t>(store_every) == 0,
            "time.store_every", "must be positive and divide time.steps");
    cfg.time.store_every = static_cast<std::size_t>(store_every);

    const json& p = section(j, "potential");
    read(p, "name", cfg.potential, "potential.");
    read(p, "params", cfg.potential_params, "potential.");
    try {
        (void)catalog(cfg.potential, cfg.potential_params);
    } catch (const InvalidParameter& e) {
        const bool known = std::find(catalog_names().begin(), catalog_names().end(), cfg.potential) !=
                           catalog_names().end();
        throw ConfigError(known ? "potential.params" : "potential.name", e.what());
    }

    const json& ini = section(j, "initial");
    InitialConfig& ic = cfg.initial;
    read(ini, "name", ic.name, "initial.");
    if (ini.contains("k") && ini.at("k").is_number_integer()) {
        ic.k.assign(static_cast<std::size_t>(cfg.domain.dim), ini.at("k").get<int>());
    } else {
        read(ini, "k", ic.k, "initial.");
    }
    read(ini, "amplitude", ic.amplitude, "initial.");
    read(ini, "center", ic.center, "initial.");
    read(ini, "width", ic.width, "initial.");
    read(ini, "c", ic.c, "initial.");
    read(ini, "path", ic.path, "initial.");
    read(ini, "sign_check", ic.sign_check, "initial.");
    require(std::isfinite(ic.amplitude), "initial.amplitude", "must be finite");
    if (ic.name == "sine_mode") {
        if (ic.k.size() == 1 && cfg.domain.dim == 2) {
            ic.k.push_back(ic.k[0]);
        }
        require(ic.k.size() == static_cast<std::size_t>(cfg.domain.dim), "initial.k", "needs one entry per axis");
        for (int k : ic.k) {
            require(k >= 1, "initial.k", "wave numbers must be positive");
        }
    } else if (ic.name == "gaussian") {
        require(ic.width > 0.0 && std::isfinite(ic.width), "initial.width", "must be positive");
        if (ic.center.empty()) {
            for (double l : cfg.domain.lengths) {
                ic.center.push_back(0.5 * l);
            }
        }
        require(ic.center.size() == static_cast<std::size_t>(cfg.domain.dim), "initial.center",
                "needs one entry per axis");
    } else if (ic.name == "constant") {
        require(std::isfinite(ic.c), "initial.c", "must be finite");
    } else if (ic.name == "from_file") {
        require(!ic.path.empty(), "initial.path", "required for from_file");
    } else {
        throw ConfigError("initial.name", "unknown initial datum '" + ic.name + "'");
    }

    const json& fp = section(j, "fixedpoint");
    FixedPointSection& fs = cfg.fixedpoint;
    read(fp, "tol", fs.tol, "fixedpoint.");
    long long max_iter = static_cast<long long>(fs.max_iter);
    read(fp, "max_iter", max_iter, "fixedpoint.");
    read(fp, "damping", fs.damping, "fixedpoint.");
    long long starts = static_cast<long long>(fs.starts);
    read(fp, "starts", starts, "fixedpoint.");
    read(fp, "initial_guess", fs.initial_guess, "fixedpoint.");
    read(fp, "seed", fs.seed, "fixedpoint.");
    require(fs.tol > 0.0 && std::isfinite(fs.tol), "fixedpoint.tol", "must be positive");
    require(max_iter >= 1, "fixedpoint.max_iter", "must be at least 1");
    fs.max_iter = static_cast<std::size_t>(max_iter);
    require(fs.damping > 0.0 && fs.damping <= 1.0, "fixedpoint.damping", "must lie in (0, 1]");
    require(starts >= 2, "fixedpoint.starts", "must be at least 2");
    fs.starts = static_cast<std::size_t>(starts);
    require(fs.initial_guess == "zero" || fs.initial_guess == "scaled_datum", "fixedpoint.initial_guess",
            "must be 'zero' or 'scaled_datum'");

    const json& out = section(j, "output");
    read(out, "dir", cfg.output.dir, "output.");
    read(out, "formats", cfg.output.formats, "output.");
    read(out, "trajectory", cfg.output.trajectory, "output.");
    for (const auto& f : cfg.output.formats) {
        require(f == "csv" || f == "json" || f == "bin", "output.formats", "unknown format '" + f + "'");
    }

    const json& cs = section(j, "convergence");
    long long levels = static_cast<long long>(cfg.convergence.levels);
    read(cs, "levels", levels, "convergence.");
    require(levels >= 2 && levels <= 8, "convergence.levels", "must lie in [2, 8]");
    cfg.convergence.levels = static_cast<std::size_t>(levels);
    std::string refine = to_string(cfg.convergence.refine);
    read(cs, "refine", refine, "convergence.");
    if (refine == "space_time") {
        cfg.convergence.refine = Refinement::space_time;
    } else if (refine == "time") {
        cfg.convergence.refine = Refinement::time;
    } else if (refine == "space") {
        cfg.convergence.refine = Refinement::space;
    } else {
        throw ConfigError("convergence.refine", "must be space_time, time or space");
    }

    const json& sw = section(j, "sweep");
    read(sw, "axis", cfg.sweep.axis, "sweep.");
    read(sw, "values", cfg.sweep.values, "sweep.");
    require(cfg.sweep.axis == "T" || cfg.sweep.axis == "amplitude", "sweep.axis", "must be 'T' or 'amplitude'");
    for (double v : cfg.sweep.values) {
        require(std::isfinite(v), "sweep.values", "entries must be finite");
        if (cfg.sweep.axis == "T") {
            require(v > 0.0, "sweep.values", "final times must be positive");
        }
    }
    if (cfg.mode == Mode::sweep) {
        require(!cfg.sweep.values.empty(), "sweep.values", "must not be empty");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw IoError("cannot read config '" + path.string() + "'");
    }
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ConfigError("<root>", std::string("not valid JSON: ") + e.what());
    }
    return parse_config(j, path.parent_path());
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["mode"] = to_string(cfg.mode);
    j["domain"] = {{"dim", cfg.domain.dim}, {"lengths", cfg.domain.lengths}, {"n", cfg.domain.n}};
    j["time"] = {{"T", cfg.time.final_time},
                 {"steps", cfg.time.steps},
                 {"scheme", to_string(cfg.time.scheme)},
                 {"store_every", cfg.time.store_every}};
    j["potential"] = {{"name", cfg.potential}, {"params", cfg.potential_params}};
    const InitialConfig& ic = cfg.initial;
    json ini = {{"name", ic.name}, {"sign_check", ic.sign_check}};
    if (ic.name == "sine_mode") {
        ini["k"] = ic.k;
        ini["amplitude"] = ic.amplitude;
    } else if (ic.name == "gaussian") {
        ini["center"] = ic.center;
        ini["width"] = ic.width;
        ini["amplitude"] = ic.amplitude;
    } else if (ic.name == "constant") {
        ini["c"] = ic.c;
    } else {
        ini["path"] = ic.path;
    }
    j["initial"] = ini;
    j["fixedpoint"] = {{"tol", cfg.fixedpoint.tol},
                       {"max_iter", cfg.fixedpoint.max_iter},
                       {"damping", cfg.fixedpoint.damping},
                       {"starts", cfg.fixedpoint.starts},
                       {"initial_guess", cfg.fixedpoint.initial_guess},
                       {"seed", cfg.fixedpoint.seed}};
    j["output"] = {{"dir", cfg.output.dir}, {"formats", cfg.output.formats}, {"trajectory", cfg.output.trajectory}};
    j["convergence"] = {{"levels", cfg.convergence.levels}, {"refine", to_string(cfg.convergence.refine)}};
    j["sweep"] = {{"axis", cfg.sweep.axis}, {"values", cfg.sweep.values}};
    return j;
}

Grid make_grid(const DomainConfig& d) {
    if (d.dim == 1) {
        return Grid::interval(d.lengths.at(0), d.n.at(0));
    }
    return Grid::rectangle(d.lengths.at(0), d.lengths.at(1), d.n.at(0), d.n.at(1));
}

namespace {

Field make_initial(const InitialConfig& ic, const Grid& grid, const std::filesystem::path& base_dir) {
    constexpr double pi = std::numbers::pi;
    if (ic.name == "sine_mode") {
        const double a = ic.amplitude;
        if (grid.dim() == 1) {
            const double w = ic.k[0] * pi / grid.length(0);
            return Field::sample(grid, [&](double x) { return a * std::sin(w * x); });
        }
        const double wx = ic.k[0] * pi / grid.length(0);
        const double wy = ic.k[1] * pi / grid.length(1);
        return Field::sample(grid, [&](double x, double y) { return a * std::sin(wx * x) * std::sin(wy * y); });
    }
    if (ic.name == "gaussian") {
        const double a = ic.amplitude;
        const double s2 = 2.0 * ic.width * ic.width;
        if (grid.dim() == 1) {
            const double c = ic.center[0];
            return Field::sample(grid, [&](double x) { return a * std::exp(-(x - c) * (x - c) / s2); });
        }
        const double cx = ic.center[0];
        const double cy = ic.center[1];
        return Field::sample(grid, [&](double x, double y) {
            return a * std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / s2);
        });
    }
    if (ic.name == "constant") {
        return Field::constant(grid, ic.c);
    }
    std::filesystem::path path(ic.path);
    if (path.is_relative()) {
        path = base_dir / path;
    }
    return io::read_field(path, grid);
}

}  // namespace

Problem build_problem(const RunConfig& cfg, double amplitude_scale) {
    const Grid grid = make_grid(cfg.domain);
    Field u0 = make_initial(cfg.initial, grid, cfg.base_dir);
    if (amplitude_scale != 1.0) {
        u0 = scaled(amplitude_scale, u0);
    }
    PicardConfig picard;
    picard.tol = cfg.fixedpoint.tol;
    picard.max_iter = cfg.fixedpoint.max_iter;
    picard.damping = cfg.fixedpoint.damping;
    picard.initial_guess = parse_initial_guess(cfg.fixedpoint.initial_guess);
    return Problem{grid,
                   DirichletLaplacian(grid),
                   catalog(cfg.potential, cfg.potential_params),
                   std::move(u0),
                   cfg.time,
                   std::move(picard),
                   cfg.initial.sign_check};
}

}  // namespace nlheat::cli
