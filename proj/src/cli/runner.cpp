#include "nlheat/cli/runner.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "nlheat/errors.hpp"
#include "nlheat/io.hpp"
#include "nlheat/parallel.hpp"

namespace nlheat::cli {

using nlohmann::json;

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string sci(double v, int digits = 3) {
    if (!std::isfinite(v)) {
        return "n/a";
    }
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits) << v;
    return os.str();
}

const char* flag(bool ok) { return ok ? "pass" : "fail"; }

json potential_json(const Potential& phi) {
    json j = {{"name", phi.name()}, {"params", phi.params()}, {"nonnegative", phi.nonnegative()}};
    j["growth"] = phi.growth() ? json(*phi.growth()) : json(nullptr);
    return j;
}

}  // namespace

SolveOutcome solve(const Problem& problem) {
    SolveOutcome out{picard_solve(problem.lap, problem.phi, problem.u0, problem.evolution, problem.picard), {}};
    if (out.report.trajectory.states.size() >= 2) {
        out.verification = verify_all(out.report, problem.phi, problem.lap, problem.sign_check);
    }
    return out;
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg, std::size_t levels, Refinement refine) {
    if (levels < 2) {
        throw ConfigError("convergence.levels", "must be at least 2");
    }
    std::vector<ConvergenceRow> rows;
    std::vector<Field> fields;
    for (std::size_t level = 0; level < levels; ++level) {
        RunConfig c = cfg;
        Grid grid = make_grid(cfg.domain);
        std::size_t step_factor = 1;
        for (std::size_t r = 0; r < level; ++r) {
            if (refine != Refinement::time) {
                grid = grid.refined();
            }
            step_factor *= refine == Refinement::space_time ? 4 : (refine == Refinement::time ? 2 : 1);
        }
        for (int a = 0; a < grid.dim(); ++a) {
            c.domain.n[static_cast<std::size_t>(a)] = grid.n(a);
        }
        c.time.steps = cfg.time.steps * step_factor;
        c.time.store_every = 1;

        const Problem problem = build_problem(c);
        SolveOutcome outcome = solve(problem);
        ConvergenceRow row;
        row.level = level;
        row.h = grid.h(0);
        row.dt = c.time.dt();
        row.converged = outcome.report.converged;
        if (outcome.verification) {
            row.elliptic_residual = outcome.verification->elliptic->residual;
            row.energy_mismatch = outcome.verification->energy->mismatch;
        }
        rows.push_back(row);
        fields.push_back(std::move(outcome.report.uT));
    }

    const Field& finest = fields.back();
    std::vector<double> diffs;
    for (std::size_t l = 0; l < levels; ++l) {
        rows[l].error_vs_finest = norm_lp(fields[l] - restrict_to(finest, fields[l].grid()), 2.0);
        if (l + 1 < levels) {
            diffs.push_back(norm_lp(fields[l] - restrict_to(fields[l + 1], fields[l].grid()), 2.0));
        }
    }
    for (std::size_t l = 0; l + 1 < diffs.size(); ++l) {
        if (diffs[l] > 0.0 && diffs[l + 1] > 0.0) {
            rows[l].observed_order = std::log2(diffs[l] / diffs[l + 1]);
        }
    }
    return rows;
}

std::vector<SweepRow> sweep(const RunConfig& cfg, const std::string& axis, std::vector<double> values,
                            std::size_t threads) {
    if (values.empty()) {
        throw ConfigError("sweep.values", "must not be empty");
    }
    if (axis != "T" && axis != "amplitude") {
        throw ConfigError("sweep.axis", "must be 'T' or 'amplitude'");
    }
    std::sort(values.begin(), values.end());
    std::vector<SweepRow> rows(values.size());
    parallel_for(values.size(), threads, [&](std::size_t i) {
        RunConfig c = cfg;
        double scale = 1.0;
        if (axis == "T") {
            c.time.final_time = values[i];
        } else {
            scale = values[i];
        }
        const Problem problem = build_problem(c, scale);
        const FixedPointReport rep = picard_solve(problem.lap, problem.phi, problem.u0, problem.evolution,
                                                  problem.picard);
        SweepRow& row = rows[i];
        row.value = values[i];
        row.converged = rep.converged;
        row.iterations = rep.iterations;
        row.final_residual = rep.final_residual();
        row.s0 = rep.threshold.s0;
        row.threshold_product = rep.threshold.product;
        row.failure = rep.failure;
    });
    return rows;
}

json to_json(const UniquenessThreshold& t) {
    return {{"S0", t.s0},
            {"lipschitz", finite_or_null(t.lipschitz.value)},
            {"lipschitz_kind", to_string(t.lipschitz.kind)},
            {"c_omega", t.c_omega},
            {"discrete_lambda1", t.discrete_lambda1},
            {"product", finite_or_null(t.product)},
            {"applicable", t.applicable()},
            {"satisfied", t.satisfied()}};
}

json to_json(const FixedPointReport& r) {
    json hist = json::array();
    for (double v : r.residual_history) {
        hist.push_back(finite_or_null(v));
    }
    json ratios = json::array();
    for (double v : r.contraction_estimates) {
        ratios.push_back(finite_or_null(v));
    }
    return {{"converged", r.converged},
            {"iterations", r.iterations},
            {"tol", r.tol},
            {"damping", r.damping},
            {"final_residual", finite_or_null(r.final_residual())},
            {"residual_history", hist},
            {"contraction_estimates", ratios},
            {"S0_inf", r.s0_inf},
            {"S0_p", r.s0_p},
            {"max_iterate_sup", r.max_iterate_sup},
            {"threshold", to_json(r.threshold)},
            {"failure", r.failure.empty() ? json(nullptr) : json(r.failure)}};
}

json to_json(const VerificationReport& v) {
    json j = json::object();
    if (v.theorem1) {
        json norms = json::array();
        for (const auto& n : v.theorem1->norms) {
            norms.push_back({{"p", std::isinf(n.p) ? json("inf") : json(n.p)},
                             {"max_ratio", finite_or_null(n.max_ratio)},
                             {"tolerance", n.tolerance},
                             {"pass", n.pass}});
        }
        j["norm_monotonicity"] = norms;
        j["positivity"] = {{"applicable", v.theorem1->positivity_applicable},
                           {"min", v.theorem1->positivity_applicable ? json(v.theorem1->positivity_min) : json(nullptr)},
                           {"tolerance", v.theorem1->positivity_tolerance},
                           {"pass", v.theorem1->positivity_pass}};
    }
    if (v.energy) {
        const EnergyCheck& e = *v.energy;
        j["energy"] = {{"lhs", e.lhs},
                       {"rhs", e.rhs},
                       {"mismatch", e.mismatch},
                       {"bound", e.bound},
                       {"bound_pass", e.bound_pass},
                       {"initial_l2", e.initial_l2},
                       {"final_l2", e.final_l2},
                       {"integral_l2", e.integral_l2},
                       {"decay_pass", e.decay_pass},
                       {"tolerance", e.tolerance}};
    }
    if (v.elliptic) {
        j["elliptic_residual"] = v.elliptic->residual;
    }
    j["pass"] = v.pass();
    return j;
}

json to_json(const ProbeReport& p) {
    json runs = json::array();
    for (const auto& r : p.runs) {
        json ratios = json::array();
        for (double v : r.contraction_estimates) {
            ratios.push_back(finite_or_null(v));
        }
        runs.push_back({{"label", r.label},
                        {"converged", r.converged},
                        {"iterations", r.iterations},
                        {"final_residual", finite_or_null(r.final_residual)},
                        {"contraction_estimates", ratios}});
    }
    return {{"runs", runs},
            {"all_converged", p.all_converged},
            {"max_distance", p.max_distance},
            {"max_relative_distance", p.max_relative_distance},
            {"seed", p.seed},
            {"generator", p.generator},
            {"threshold", to_json(p.threshold)}};
}

void write_convergence_csv(const std::filesystem::path& path, const std::vector<ConvergenceRow>& rows) {
    std::ofstream os(path);
    if (!os) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    os.precision(17);
    os << "level,h,dt,uT_error_vs_finest,elliptic_residual,energy_mismatch,observed_order\n";
    for (const auto& r : rows) {
        os << r.level << ',' << r.h << ',' << r.dt << ',' << r.error_vs_finest << ',' << r.elliptic_residual << ','
           << r.energy_mismatch << ',';
        if (r.observed_order) {
            os << *r.observed_order;
        } else {
            os << "n/a";
        }
        os << '\n';
    }
    if (!os) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    std::ofstream os(path);
    if (!os) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    os.precision(17);
    os << "value,converged,iterations,final_residual,S0,threshold_product\n";
    for (const auto& r : rows) {
        os << r.value << ',' << (r.converged ? 1 : 0) << ',' << r.iterations << ',' << r.final_residual << ','
           << r.s0 << ',';
        if (std::isfinite(r.threshold_product)) {
            os << r.threshold_product;
        } else {
            os << "n/a";
        }
        os << '\n';
    }
    if (!os) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

namespace {

void write_field(const RunConfig& cfg, const std::filesystem::path& dir, const std::string& stem, const Field& f,
                 json& files) {
    if (cfg.wants("csv")) {
        io::write_field_csv(dir / (stem + ".csv"), f);
        files[stem + "_csv"] = stem + ".csv";
    }
    if (cfg.wants("json")) {
        io::write_field_json(dir / (stem + ".json"), f);
        files[stem + "_json"] = stem + ".json";
    }
}

int run_solve(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& out, bool quiet) {
    const Problem problem = build_problem(cfg);
    const SolveOutcome outcome = solve(problem);
    const FixedPointReport& rep = outcome.report;

    json files = json::object();
    write_field(cfg, dir, "uT", rep.uT, files);
    if (!rep.trajectory.states.empty()) {
        if (cfg.wants("csv") && cfg.output.trajectory) {
            io::write_trajectory_csv(dir / "trajectory.csv", rep.trajectory);
            files["trajectory_csv"] = "trajectory.csv";
        }
        if (cfg.wants("bin")) {
            io::write_trajectory_bin(dir / "trajectory.bin", rep.trajectory);
            files["trajectory_bin"] = "trajectory.bin";
        }
    }

    json report = {{"mode", "solve"}, {"potential", potential_json(problem.phi)}, {"fixedpoint", to_json(rep)}};
    report["fixedpoint"]["files"] = files;
    report["verification"] = outcome.verification ? to_json(*outcome.verification) : json(nullptr);
    io::write_json(dir / "report.json", report);

    if (!quiet) {
        out << "solve converged=" << (rep.converged ? "yes" : "no") << " iterations=" << rep.iterations
            << " residual=" << sci(rep.final_residual()) << " threshold_product=" << sci(rep.threshold.product);
        if (outcome.verification) {
            const auto& v = *outcome.verification;
            out << " theorem1=" << flag(v.theorem1->pass()) << " energy_bound=" << flag(v.energy->pass())
                << " energy_mismatch=" << sci(v.energy->mismatch) << " elliptic_residual="
                << sci(v.elliptic->residual);
        }
        out << '\n';
    }
    return rep.converged ? kExitOk : kExitNotConverged;
}

int run_probe(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& out, bool quiet) {
    const Problem problem = build_problem(cfg);
    const ProbeReport probe = uniqueness_probe(problem.lap, problem.phi, problem.u0, problem.evolution,
                                               problem.picard, cfg.fixedpoint.starts, cfg.fixedpoint.seed,
                                               thread_budget());
    json files = json::object();
    for (const auto& r : probe.runs) {
        write_field(cfg, dir, "uT_" + r.label, r.uT, files);
    }
    json report = {{"mode", "probe"}, {"potential", potential_json(problem.phi)}, {"probe", to_json(probe)}};
    report["probe"]["files"] = files;
    io::write_json(dir / "report.json", report);

    std::size_t ok = 0;
    for (const auto& r : probe.runs) {
        ok += r.converged ? 1 : 0;
    }
    if (!quiet) {
        out << "probe starts=" << probe.runs.size() << " converged=" << ok
            << " max_relative_distance=" << sci(probe.max_relative_distance)
            << " threshold_product=" << sci(probe.threshold.product) << '\n';
    }
    return probe.all_converged ? kExitOk : kExitNotConverged;
}

int run_convergence(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& out, bool quiet) {
    const auto rows = convergence_study(cfg, cfg.convergence.levels, cfg.convergence.refine);
    write_convergence_csv(dir / "convergence.csv", rows);
    json jrows = json::array();
    bool all = true;
    for (const auto& r : rows) {
        all = all && r.converged;
        jrows.push_back({{"level", r.level},
                         {"h", r.h},
                         {"dt", r.dt},
                         {"uT_error_vs_finest", r.error_vs_finest},
                         {"elliptic_residual", r.elliptic_residual},
                         {"energy_mismatch", r.energy_mismatch},
                         {"observed_order", r.observed_order ? json(*r.observed_order) : json("n/a")},
                         {"converged", r.converged}});
    }
    json report = {{"mode", "convergence_study"},
                   {"convergence",
                    {{"levels", cfg.convergence.levels},
                     {"refine", to_string(cfg.convergence.refine)},
                     {"rows", jrows},
                     {"files", {{"table", "convergence.csv"}}}}}};
    io::write_json(dir / "report.json", report);
    if (!quiet) {
        out << "convergence_study levels=" << rows.size() << " refine=" << to_string(cfg.convergence.refine)
            << " observed_order=" << (rows.front().observed_order ? sci(*rows.front().observed_order) : "n/a")
            << " converged=" << (all ? "yes" : "no") << '\n';
    }
    return all ? kExitOk : kExitNotConverged;
}

int run_sweep(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& out, bool quiet) {
    const auto rows = sweep(cfg, cfg.sweep.axis, cfg.sweep.values, thread_budget());
    write_sweep_csv(dir / "sweep.csv", rows);
    json jrows = json::array();
    std::size_t ok = 0;
    for (const auto& r : rows) {
        ok += r.converged ? 1 : 0;
        jrows.push_back({{"value", r.value},
                         {"converged", r.converged},
                         {"iterations", r.iterations},
                         {"final_residual", finite_or_null(r.final_residual)},
                         {"S0", r.s0},
                         {"threshold_product", finite_or_null(r.threshold_product)},
                         {"failure", r.failure.empty() ? json(nullptr) : json(r.failure)}});
    }
    json report = {{"mode", "sweep"},
                   {"sweep", {{"axis", cfg.sweep.axis}, {"rows", jrows}, {"files", {{"table", "sweep.csv"}}}}}};
    io::write_json(dir / "report.json", report);
    if (!quiet) {
        out << "sweep axis=" << cfg.sweep.axis << " rows=" << rows.size() << " converged=" << ok << '\n';
    }
    return kExitOk;
}

}  // namespace

int run(const std::filesystem::path& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err) {
    try {
        RunConfig cfg = load_config(config_path);
        if (overrides.mode) {
            cfg.mode = parse_mode(*overrides.mode);
        }
        if (overrides.out) {
            cfg.output.dir = *overrides.out;
        }
        if (overrides.seed) {
            cfg.fixedpoint.seed = *overrides.seed;
        }
        if (cfg.mode == Mode::sweep && cfg.sweep.values.empty()) {
            throw ConfigError("sweep.values", "must not be empty");
        }

        const std::filesystem::path dir(cfg.output.dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) {
            throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
        }

        json echo = config_to_json(cfg);
        if (cfg.initial.name == "from_file") {
            std::filesystem::path p(cfg.initial.path);
            echo["initial"]["path"] = std::filesystem::absolute(p.is_relative() ? cfg.base_dir / p : p).string();
        }
        echo["output"]["dir"] = ".";
        io::write_json(dir / "config.json", echo);

        switch (cfg.mode) {
            case Mode::solve:
                return run_solve(cfg, dir, out, overrides.quiet);
            case Mode::probe:
                return run_probe(cfg, dir, out, overrides.quiet);
            case Mode::convergence_study:
                return run_convergence(cfg, dir, out, overrides.quiet);
            case Mode::sweep:
                return run_sweep(cfg, dir, out, overrides.quiet);
        }
        return kExitInvalidConfig;
    } catch (const ConfigError& e) {
        err << "invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const InvalidParameter& e) {
        err << "invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const IoError& e) {
        err << "i/o failure: " << e.what() << '\n';
        return kExitIoFailure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "i/o failure: " << e.what() << '\n';
        return kExitIoFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNotConverged;
    }
}

int main(int argc, char** argv) {
    CLI::App app{"Solver for the heat equation with a potential depending on the time integral of the solution"};
    std::string config;
    Overrides ov;
    std::string mode;
    std::string out_dir;
    std::uint64_t seed = 0;
    app.add_option("config", config, "JSON run configuration")->required();
    auto* mode_opt = app.add_option("--mode", mode, "solve | probe | convergence_study | sweep");
    auto* out_opt = app.add_option("--out", out_dir, "output directory");
    auto* seed_opt = app.add_option("--seed", seed, "seed for random probe starts");
    app.add_flag("--quiet", ov.quiet, "suppress the summary line");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidConfig;
    }
    if (*mode_opt) {
        ov.mode = mode;
    }
    if (*out_opt) {
        ov.out = out_dir;
    }
    if (*seed_opt) {
        ov.seed = seed;
    }
    return run(config, ov, std::cout, std::cerr);
}

}  // namespace nlheat::cli
