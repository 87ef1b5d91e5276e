#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlheat/mesh.hpp"

namespace nlheat {

enum class LipschitzKind {
    exact,           ///< closed-form constant from the catalog
    sampled,         ///< adjacent-pair difference quotients; biased low
    not_applicable,  ///< potential is not declared locally Lipschitz
};

struct LipschitzEstimate {
    double value = 0.0;  ///< NaN when not applicable
    LipschitzKind kind = LipschitzKind::exact;

    bool applicable() const noexcept { return kind != LipschitzKind::not_applicable; }
};

const char* to_string(LipschitzKind kind);

/// Capabilities a potential claims about itself. They are checked on the
/// values actually evaluated, never assumed silently.
struct PotentialCertificates {
    bool nonnegative = false;
    /// a with phi(s) <= a (1 + |s|) for all s.
    std::optional<double> growth;
    /// Exact Lipschitz constant of phi on [-S0, S0]; empty means "estimate by sampling".
    std::function<double(double)> lipschitz_rule;
    bool locally_lipschitz = true;
};

/// The scalar potential phi: R -> R in the frozen operator -Delta + phi(v).
class Potential {
public:
    using Evaluator = std::function<double(double)>;

    Potential(std::string name, std::vector<double> params, Evaluator phi, PotentialCertificates certs);

    double operator()(double s) const { return phi_(s); }

    const std::string& name() const noexcept { return name_; }
    const std::vector<double>& params() const noexcept { return params_; }
    bool nonnegative() const noexcept { return certs_.nonnegative; }
    std::optional<double> growth() const noexcept { return certs_.growth; }

    LipschitzEstimate lipschitz_on(double s0) const;

    /// Grid points used by the sampled Lipschitz estimate.
    static constexpr int kLipschitzSamples = 10000;

private:
    std::string name_;
    std::vector<double> params_;
    Evaluator phi_;
    PotentialCertificates certs_;
};

/// Pointwise phi(v_i). Throws EvaluationError naming the node when a value is
/// non-finite or breaks the potential's nonnegativity/growth certificate.
Field nemytskii(const Potential& phi, const Field& v);

/// Tolerance for the nonnegativity spot check.
inline constexpr double kNonnegativeSlack = 1e-14;

/// Named potentials with exact certificates:
///   zero            []     phi = 0
///   constant        [c]    phi = c
///   quadratic       [k=1]  phi = k s^2
///   absval          []     phi = |s|
///   bounded_sine    [a=1]  phi = a (1 + sin s)
///   linear_growth   [a]    phi = a (1 + |s|) / 2
/// Throws InvalidParameter for unknown names or bad parameter lists.
Potential catalog(const std::string& name, const std::vector<double>& params = {});

/// Names accepted by catalog().
const std::vector<std::string>& catalog_names();

}  // namespace nlheat
