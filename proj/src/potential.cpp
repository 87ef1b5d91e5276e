#include "nlheat/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlheat/errors.hpp"

namespace nlheat {

const char* to_string(LipschitzKind kind) {
    switch (kind) {
        case LipschitzKind::exact:
            return "exact";
        case LipschitzKind::sampled:
            return "sampled";
        case LipschitzKind::not_applicable:
            return "not_applicable";
    }
    return "unknown";
}

Potential::Potential(std::string name, std::vector<double> params, Evaluator phi,
                     PotentialCertificates certs)
    : name_(std::move(name)), params_(std::move(params)), phi_(std::move(phi)), certs_(std::move(certs)) {
    if (!phi_) {
        throw InvalidParameter("potential '" + name_ + "' has no evaluator");
    }
    if (certs_.growth && !(*certs_.growth > 0.0)) {
        throw InvalidParameter("growth certificate must be positive");
    }
}

LipschitzEstimate Potential::lipschitz_on(double s0) const {
    if (!(s0 >= 0.0) || !std::isfinite(s0)) {
        std::ostringstream os;
        os << "lipschitz_on: S0 must be finite and nonnegative, got " << s0;
        throw InvalidParameter(os.str());
    }
    if (!certs_.locally_lipschitz) {
        return {std::numeric_limits<double>::quiet_NaN(), LipschitzKind::not_applicable};
    }
    if (certs_.lipschitz_rule) {
        return {certs_.lipschitz_rule(s0), LipschitzKind::exact};
    }
    if (s0 == 0.0) {
        return {0.0, LipschitzKind::sampled};
    }
    const double step = 2.0 * s0 / (kLipschitzSamples - 1);
    double best = 0.0;
    double prev = phi_(-s0);
    for (int k = 1; k < kLipschitzSamples; ++k) {
        const double s = -s0 + step * k;
        const double cur = phi_(s);
        best = std::max(best, std::abs(cur - prev) / step);
        prev = cur;
    }
    return {best, LipschitzKind::sampled};
}

Field nemytskii(const Potential& phi, const Field& v) {
    std::vector<double> w(v.size());
    const auto growth = phi.growth();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double s = v[i];
        const double value = phi(s);
        if (!std::isfinite(value)) {
            std::ostringstream os;
            os << "potential '" << phi.name() << "' is not finite at node " << i << " (argument " << s << ")";
            throw EvaluationError(os.str(), i);
        }
        if (phi.nonnegative() && value < -kNonnegativeSlack) {
            std::ostringstream os;
            os << "potential '" << phi.name() << "' certified nonnegative but returned " << value
               << " at node " << i;
            throw EvaluationError(os.str(), i);
        }
        if (growth && value > *growth * (1.0 + std::abs(s)) * (1.0 + 1e-14)) {
            std::ostringstream os;
            os << "potential '" << phi.name() << "' violates its growth certificate at node " << i;
            throw EvaluationError(os.str(), i);
        }
        w[i] = value;
    }
    return Field(v.grid(), std::move(w));
}

namespace {

void expect_params(const std::string& name, const std::vector<double>& params, std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi) {
        std::ostringstream os;
        os << "potential '" << name << "' takes ";
        if (lo == hi) {
            os << lo;
        } else {
            os << lo << " to " << hi;
        }
        os << " parameter(s), got " << params.size();
        throw InvalidParameter(os.str());
    }
    for (double p : params) {
        if (!std::isfinite(p)) {
            throw InvalidParameter("potential '" + name + "' has a non-finite parameter");
        }
    }
}

}  // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"zero", "constant", "quadratic", "absval", "bounded_sine",
                                                "linear_growth"};
    return names;
}

Potential catalog(const std::string& name, const std::vector<double>& params) {
    auto zero_rule = [](double) { return 0.0; };

    if (name == "zero") {
        expect_params(name, params, 0, 0);
        return Potential(name, params, [](double) { return 0.0; }, {true, std::nullopt, zero_rule, true});
    }
    if (name == "constant") {
        expect_params(name, params, 1, 1);
        const double c = params[0];
        std::optional<double> growth;
        if (c > 0.0) {
            growth = c;
        }
        return Potential(name, params, [c](double) { return c; }, {c >= 0.0, growth, zero_rule, true});
    }
    if (name == "quadratic") {
        expect_params(name, params, 0, 1);
        const double k = params.empty() ? 1.0 : params[0];
        return Potential(name, params, [k](double s) { return k * s * s; },
                         {k >= 0.0, std::nullopt, [k](double s0) { return 2.0 * std::abs(k) * s0; }, true});
    }
    if (name == "absval") {
        expect_params(name, params, 0, 0);
        return Potential(name, params, [](double s) { return std::abs(s); },
                         {true, 1.0, [](double) { return 1.0; }, true});
    }
    if (name == "bounded_sine") {
        expect_params(name, params, 0, 1);
        const double a = params.empty() ? 1.0 : params[0];
        std::optional<double> growth;
        if (a > 0.0) {
            growth = 2.0 * a;
        }
        // sup |a cos s| on [-S0, S0] is attained at s = 0.
        return Potential(name, params, [a](double s) { return a * (1.0 + std::sin(s)); },
                         {a >= 0.0, growth, [a](double) { return std::abs(a); }, true});
    }
    if (name == "linear_growth") {
        expect_params(name, params, 1, 1);
        const double a = params[0];
        if (!(a > 0.0)) {
            throw InvalidParameter("potential 'linear_growth' needs a > 0");
        }
        return Potential(name, params, [a](double s) { return 0.5 * a * (1.0 + std::abs(s)); },
                         {true, a, [a](double) { return 0.5 * a; }, true});
    }
    throw InvalidParameter("unknown potential '" + name + "'");
}

}  // namespace nlheat
