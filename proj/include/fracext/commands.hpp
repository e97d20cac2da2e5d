#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "extension.hpp"
#include "families.hpp"
#include "funcalc.hpp"
#include "operators.hpp"
#include "table.hpp"
#include "verify.hpp"

namespace fracext {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

struct CommandOutcome {
    Table table;
    int exit_code = kExitOk;
    std::string summary;  // one line for stderr
};

namespace detail {

// ||got - want|| / ||want||, or the absolute error when want = 0.
inline double error_vs(const Vec& got, const Vec& want) {
    const double d = (got - want).norm(), w = want.norm();
    return w > 0 ? d / w : d;
}

inline std::vector<std::string> expand(const std::vector<std::string>& requested, const std::vector<std::string>& all,
                                       const std::vector<std::string>& fallback, const char* what) {
    if (requested.empty()) return fallback;
    std::vector<std::string> out;
    for (const auto& m : requested) {
        if (m == "all") return all;
        if (std::find(all.begin(), all.end(), m) == all.end()) {
            std::string known;
            for (const auto& a : all) known += (known.empty() ? "" : ", ") + a;
            throw ConfigError(std::string("config: unknown ") + what + " '" + m + "' (known: " + known + ", all)");
        }
        out.push_back(m);
    }
    return out;
}

inline std::string verdict(double worst, double tol) {
    std::ostringstream os;
    os << "max error " << worst << " (tolerance " << tol << "): " << (worst <= tol ? "ok" : "FAILED");
    return os.str();
}

}  // namespace detail

// Fractional power by each requested method against the spectral oracle.
inline CommandOutcome cmd_fracpow(const ProblemConfig& c) {
    validate(c);
    const LinearOperator A = build_operator(c.op);
    const Vec f = build_vector(c.vector, A.dimension());
    const FracOrder sigma(c.sigma);
    const auto methods = detail::expand(c.methods, {"balakrishnan", "integrated_formula", "spectral_oracle"},
                                        {"balakrishnan", "integrated_formula", "spectral_oracle"}, "method");
    const std::vector<double> alphas = c.alphas.empty() ? std::vector<double>{c.family.alpha} : c.alphas;
    const Vec oracle = spectral_power_oracle(A, sigma.value(), f).value;

    CommandOutcome out{Table({"method", "alpha", "sigma", "component", "value", "oracle", "abs_error", "rel_error",
                              "error_estimate"})};
    double worst = 0.0;
    auto emit = [&](const std::string& m, Table::Cell alpha, const FractionalPowerResult& r) {
        const double e = detail::error_vs(r.value, oracle);
        worst = std::max(worst, e);
        for (Eigen::Index k = 0; k < f.size(); ++k)
            out.table.add_row({m, alpha, c.sigma, (long long)k, r.value(k), oracle(k), std::abs(r.value(k) - oracle(k)), e,
                               r.error_estimate});
    };
    for (const auto& m : methods) {
        if (m == "balakrishnan") emit(m, std::monostate{}, balakrishnan_power(A, sigma, f));
        else if (m == "spectral_oracle") emit(m, std::monostate{}, spectral_power_oracle(A, sigma.value(), f));
        else
            for (double a : alphas) emit(m, a, integrated_power(semigroup_of_order(A, a), sigma, f));
    }
    out.exit_code = worst <= c.tolerance ? kExitOk : kExitNumerical;
    out.summary = "fracpow: " + detail::verdict(worst, c.tolerance);
    return out;
}

// Extension solution on the z-grid by each requested formula; deltas against the first formula.
inline CommandOutcome cmd_extend(const ProblemConfig& c) {
    validate(c);
    if (c.z_grid.empty()) throw ConfigError("config: z_grid is empty");
    const LinearOperator A = build_operator(c.op);
    const Vec f = build_vector(c.vector, A.dimension());
    const FracOrder sigma(c.sigma);
    const std::vector<std::string> all{"semigroup", "regularized", "fractional_data", "cosine", "cosine_fractional"};
    const std::vector<std::string> fallback = is_cosine_kind(c.family)
                                                  ? std::vector<std::string>{"cosine", "cosine_fractional"}
                                                  : std::vector<std::string>{"semigroup", "regularized", "fractional_data"};
    const auto formulas = detail::expand(c.methods, all, fallback, "formula");
    const double a = c.family.alpha;
    std::optional<OperatorFamily> semi, cosf;
    auto semigroup = [&]() -> const OperatorFamily& {
        if (!semi) semi = semigroup_of_order(A, a);
        return *semi;
    };
    auto cosine = [&]() -> const OperatorFamily& {
        if (!cosf) cosf = cosine_of_order(A, a);
        return *cosf;
    };

    CommandOutcome out{Table({"z", "formula", "component", "value", "error_estimate", "reference", "delta"})};
    double worst = 0.0;
    for (cplx z : c.z_grid) {
        Vec ref;
        for (const auto& m : formulas) {
            ExtensionEvaluation e;
            if (m == "semigroup") e = solve_semigroup_form(semigroup(), sigma, z, f);
            else if (m == "regularized") e = solve_regularized(semigroup(), sigma, z, f);
            else if (m == "fractional_data") e = solve_fractional_data(semigroup(), sigma, z, f);
            else if (m == "cosine") e = solve_cosine_form(cosine(), sigma, z, f);
            else e = solve_cosine_fractional(cosine(), sigma, z, f);
            if (ref.size() == 0) ref = e.value;
            const double d = detail::error_vs(e.value, ref);
            worst = std::max(worst, d);
            for (Eigen::Index k = 0; k < f.size(); ++k)
                out.table.add_row({z, m, (long long)k, e.value(k), e.error_estimate, formulas.front(), d});
        }
    }
    out.exit_code = worst <= c.tolerance ? kExitOk : kExitNumerical;
    out.summary = "extend: pairwise formula " + detail::verdict(worst, c.tolerance);
    return out;
}

// Neumann and/or quotient traces with Richardson extrapolation, compared with the oracle.
inline CommandOutcome cmd_trace(const ProblemConfig& c) {
    validate(c);
    const LinearOperator A = build_operator(c.op);
    const Vec f = build_vector(c.vector, A.dimension());
    const FracOrder sigma(c.sigma);
    require_sigma_band(sigma);
    const ExtensionHandle u(semigroup_of_order(A, c.family.alpha), sigma, f);
    const Vec oracle = spectral_power_oracle(A, sigma.value(), f).value;
    const auto k = constants_for(sigma);
    TraceOptions opt;
    opt.grid.clear();
    for (int i = 0; i < c.trace.count; ++i) opt.grid.push_back(c.trace.y0 * std::pow(c.trace.ratio, i));

    std::vector<TraceEstimate> est;
    for (const auto& kind : c.trace.kinds)
        est.push_back(kind == "neumann" ? neumann_trace(u, c.trace.theta, opt) : quotient_trace(u, c.trace.theta, opt));

    // consistency: quotient - neumann / (2 sigma)
    double consistency = NAN, max_diag = 0.0;
    const TraceEstimate* neu = nullptr;
    const TraceEstimate* quo = nullptr;
    for (const auto& e : est) {
        (e.kind == TraceKind::neumann ? neu : quo) = &e;
        max_diag = std::max(max_diag, e.diagnostic);
    }
    if (neu && quo) consistency = (quo->limit - neu->limit / (2.0 * sigma.value())).norm();

    CommandOutcome out{Table({"kind", "k", "y", "component", "sample", "extrapolant", "limit", "expected_limit",
                              "power_estimate", "oracle", "rel_error", "diagnostic", "consistency"})};
    double worst = 0.0;
    for (const auto& e : est) {
        const cplx factor = e.kind == TraceKind::neumann ? k.neumann_factor : k.c_sigma;
        const double err = detail::error_vs(e.power_estimate, oracle);
        worst = std::max(worst, err);
        const char* name = e.kind == TraceKind::neumann ? "neumann" : "quotient";
        for (std::size_t i = 0; i < e.y.size(); ++i)
            for (Eigen::Index j = 0; j < f.size(); ++j)
                out.table.add_row({std::string(name), (long long)i, e.y[i], (long long)j, e.samples[i](j), e.extrapolants[i](j),
                                   e.limit(j), factor * oracle(j), e.power_estimate(j), oracle(j), err, e.diagnostic,
                                   std::isnan(consistency) ? Table::Cell{} : Table::Cell{consistency}});
    }
    bool ok = worst <= c.tolerance;
    std::string extra;
    if (!std::isnan(consistency)) {
        const double bound = std::max(10.0 * max_diag, c.tolerance * quo->limit.norm());
        ok = ok && consistency <= bound;
        std::ostringstream os;
        os << "; consistency " << consistency << " (bound " << bound << ")";
        extra = os.str();
    }
    out.exit_code = ok ? kExitOk : kExitNumerical;
    out.summary = "trace: " + detail::verdict(worst, c.tolerance) + extra;
    return out;
}

// Module invariant suites as a pass/fail table.
inline CommandOutcome cmd_verify(const std::string& suite, unsigned long long seed = 11) {
    const auto checks = run_suite(suite, seed);
    CommandOutcome out{Table({"suite", "check", "value", "tolerance", "pass", "note"})};
    int failed = 0;
    for (const auto& ch : checks) {
        out.table.add_row({ch.suite, ch.name, ch.value, ch.tolerance, std::string(ch.pass ? "pass" : "fail"), ch.note});
        failed += ch.pass ? 0 : 1;
    }
    out.exit_code = failed == 0 ? kExitOk : kExitNumerical;
    out.summary = "verify " + suite + ": " + std::to_string(checks.size() - std::size_t(failed)) + "/" +
                  std::to_string(checks.size()) + " checks passed";
    return out;
}

}  // namespace fracext
