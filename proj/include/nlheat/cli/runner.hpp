#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "nlheat/cli/config.hpp"
#include "nlheat/fixedpoint.hpp"
#include "nlheat/verify.hpp"

namespace nlheat::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitNotConverged = 2,
    kExitInvalidConfig = 3,
    kExitIoFailure = 4,
};

struct SolveOutcome {
    FixedPointReport report;
    /// Empty when no Phi evaluation completed.
    std::optional<VerificationReport> verification;
};

SolveOutcome solve(const Problem& problem);

struct ConvergenceRow {
    std::size_t level = 0;
    double h = 0.0;
    double dt = 0.0;
    double error_vs_finest = 0.0;
    double elliptic_residual = 0.0;
    double energy_mismatch = 0.0;
    /// log2(d_l / d_{l+1}), d_l = ||uT_l - uT_{l+1}|| on level l nodes.
    std::optional<double> observed_order;
    bool converged = false;
};

/// Reruns `cfg` on `levels` successively refined resolutions.
std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg, std::size_t levels, Refinement refine);

struct SweepRow {
    double value = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    double final_residual = 0.0;
    double s0 = 0.0;
    double threshold_product = 0.0;  ///< NaN when the potential is not Lipschitz
    std::string failure;
};

/// One picard_solve per value along `axis` ("T" or "amplitude"); rows sorted by value.
std::vector<SweepRow> sweep(const RunConfig& cfg, const std::string& axis, std::vector<double> values,
                            std::size_t threads = 0);

nlohmann::json to_json(const FixedPointReport& report);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const UniquenessThreshold& t);
nlohmann::json to_json(const ProbeReport& report);

void write_convergence_csv(const std::filesystem::path& path, const std::vector<ConvergenceRow>& rows);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

struct Overrides {
    std::optional<std::string> mode;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

/// Executes the configured mode, writes artifacts to the output directory
/// and prints a one-line summary to `out`. Returns an ExitCode.
int run(const std::filesystem::path& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err);

/// Entry point behind the nlheat executable.
int main(int argc, char** argv);

}  // namespace nlheat::cli
