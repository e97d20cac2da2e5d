#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "complex.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "operators.hpp"
#include "specfun.hpp"

namespace fracext {

inline constexpr const char* kConfigSchema = "fracext/1";

struct ConfigError : Error {
    using Error::Error;
};

struct OperatorSpec {
    std::string kind = "laplacian";  // laplacian | multiplier | diagonal | random_hermitian
    int size = 8;
    double spacing = 1.0;
    std::string boundary = "dirichlet";
    std::string symbol;               // multiplier
    std::vector<double> modes;        // multiplier
    std::vector<cplx> values;         // diagonal
    unsigned long long seed = 7;      // random_hermitian
    bool operator==(const OperatorSpec&) const = default;
};

struct FamilySpec {
    std::string kind = "semigroup";  // semigroup | integrated_semigroup | cosine | integrated_cosine
    double alpha = 0.0;
    bool operator==(const FamilySpec&) const = default;
};

struct VectorSpec {
    std::string kind = "random";  // random | ones | values
    unsigned long long seed = 11;
    bool complex_entries = false;
    std::vector<cplx> values;
    bool operator==(const VectorSpec&) const = default;
};

struct TraceSpec {
    std::vector<std::string> kinds{"neumann", "quotient"};
    double theta = 0.0;
    double y0 = 0.5;
    double ratio = 0.7;
    int count = 13;
    bool operator==(const TraceSpec&) const = default;
};

struct OutputSpec {
    std::string path = "-";
    std::string format;  // csv | json | "" (from the path extension, default csv)
    bool operator==(const OutputSpec&) const = default;
};

struct ProblemConfig {
    OperatorSpec op;
    cplx sigma = 0.5;
    FamilySpec family;
    std::vector<std::string> methods;  // empty: command default
    std::vector<double> alphas;        // orders for the integrated fractional-power formula
    std::vector<cplx> z_grid;
    TraceSpec trace;
    VectorSpec vector;
    double tolerance = 1e-6;
    OutputSpec output;
    bool operator==(const ProblemConfig&) const = default;
};

namespace detail {

using json = nlohmann::ordered_json;

inline cplx complex_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_object() && j.contains("re")) {
        const double re = j.at("re").get<double>();
        const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
        return {re, im};
    }
    throw ConfigError("config: " + where + " must be a number or an object {re, im}");
}

inline json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError("config: " + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
    }
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace detail

inline void validate(const ProblemConfig& c) {
    const auto& o = c.op;
    if (o.kind == "laplacian") {
        if (o.size < 2 || o.size > kMaxDimension) throw ConfigError("config: operator.size must lie in [2, 64]");
        if (!(o.spacing > 0)) throw ConfigError("config: operator.spacing must be positive");
        if (o.boundary != "dirichlet" && o.boundary != "periodic")
            throw ConfigError("config: operator.boundary must be dirichlet or periodic");
    } else if (o.kind == "multiplier") {
        if (o.modes.empty()) throw ConfigError("config: operator.modes must be a nonempty list");
        if (o.symbol.empty()) throw ConfigError("config: operator.symbol is required for a multiplier");
    } else if (o.kind == "diagonal") {
        if (o.values.empty()) throw ConfigError("config: operator.values must be a nonempty list");
    } else if (o.kind == "random_hermitian") {
        if (o.size < 1 || o.size > kMaxDimension) throw ConfigError("config: operator.size must lie in [1, 64]");
    } else {
        throw ConfigError("config: operator.kind must be laplacian, multiplier, diagonal or random_hermitian");
    }
    if (!(c.sigma.real() > kSigmaBand.lo && c.sigma.real() < kSigmaBand.hi)) {
        std::ostringstream os;
        os << "config: sigma real part " << c.sigma.real() << " outside the band (" << kSigmaBand.lo << ", "
           << kSigmaBand.hi << ")";
        throw ConfigError(os.str());
    }
    const auto& f = c.family;
    if (f.kind != "semigroup" && f.kind != "integrated_semigroup" && f.kind != "cosine" && f.kind != "integrated_cosine")
        throw ConfigError("config: family.kind must be semigroup, integrated_semigroup, cosine or integrated_cosine");
    if (!(f.alpha >= 0) || ((f.kind == "semigroup" || f.kind == "cosine") && f.alpha != 0.0))
        throw ConfigError("config: family.alpha must be 0 for semigroup/cosine and >= 0 otherwise");
    for (double a : c.alphas)
        if (!(a >= 0)) throw ConfigError("config: alphas must be nonnegative");
    if (c.vector.kind != "random" && c.vector.kind != "ones" && c.vector.kind != "values")
        throw ConfigError("config: vector.kind must be random, ones or values");
    if (c.vector.kind == "values" && c.vector.values.empty()) throw ConfigError("config: vector.values is empty");
    if (!(c.tolerance > 0)) throw ConfigError("config: tolerance must be positive");
    if (!(std::abs(c.trace.theta) < pi / 4)) throw ConfigError("config: trace.theta must satisfy |theta| < pi/4");
    if (!(c.trace.y0 > 0) || !(c.trace.ratio > 0 && c.trace.ratio < 1) || c.trace.count < 3)
        throw ConfigError("config: trace grid needs y0 > 0, 0 < ratio < 1 and count >= 3");
    for (const auto& k : c.trace.kinds)
        if (k != "neumann" && k != "quotient") throw ConfigError("config: trace.kinds entries must be neumann or quotient");
    if (!c.output.format.empty() && c.output.format != "csv" && c.output.format != "json")
        throw ConfigError("config: output.format must be csv or json");
}

inline ProblemConfig config_from_json(const nlohmann::ordered_json& j) {
    using detail::json;
    ProblemConfig c;
    try {
        detail::check_keys(j, {"schema", "operator", "sigma", "family", "methods", "alphas", "z_grid", "trace", "vector",
                               "tolerance", "output"},
                           "the top level");
        if (!j.contains("schema") || !j.at("schema").is_string() || j.at("schema").get<std::string>() != kConfigSchema)
            throw ConfigError(std::string("config: missing or unsupported schema (expected \"") + kConfigSchema + "\")");
        if (j.contains("operator")) {
            const json& o = j.at("operator");
            detail::check_keys(o, {"kind", "size", "spacing", "boundary", "symbol", "modes", "values", "seed"}, "operator");
            detail::read_opt(o, "kind", c.op.kind);
            detail::read_opt(o, "size", c.op.size);
            detail::read_opt(o, "spacing", c.op.spacing);
            detail::read_opt(o, "boundary", c.op.boundary);
            detail::read_opt(o, "symbol", c.op.symbol);
            detail::read_opt(o, "modes", c.op.modes);
            detail::read_opt(o, "seed", c.op.seed);
            if (o.contains("values"))
                for (const auto& v : o.at("values")) c.op.values.push_back(detail::complex_from_json(v, "operator.values"));
        }
        if (j.contains("sigma")) c.sigma = detail::complex_from_json(j.at("sigma"), "sigma");
        if (j.contains("family")) {
            const json& f = j.at("family");
            detail::check_keys(f, {"kind", "alpha"}, "family");
            detail::read_opt(f, "kind", c.family.kind);
            detail::read_opt(f, "alpha", c.family.alpha);
        }
        detail::read_opt(j, "methods", c.methods);
        detail::read_opt(j, "alphas", c.alphas);
        if (j.contains("z_grid")) {
            if (!j.at("z_grid").is_array()) throw ConfigError("config: z_grid must be a list");
            for (const auto& v : j.at("z_grid")) c.z_grid.push_back(detail::complex_from_json(v, "z_grid"));
        }
        if (j.contains("trace")) {
            const json& t = j.at("trace");
            detail::check_keys(t, {"kinds", "theta", "y0", "ratio", "count"}, "trace");
            detail::read_opt(t, "kinds", c.trace.kinds);
            detail::read_opt(t, "theta", c.trace.theta);
            detail::read_opt(t, "y0", c.trace.y0);
            detail::read_opt(t, "ratio", c.trace.ratio);
            detail::read_opt(t, "count", c.trace.count);
        }
        if (j.contains("vector")) {
            const json& v = j.at("vector");
            detail::check_keys(v, {"kind", "seed", "complex", "values"}, "vector");
            detail::read_opt(v, "kind", c.vector.kind);
            detail::read_opt(v, "seed", c.vector.seed);
            detail::read_opt(v, "complex", c.vector.complex_entries);
            if (v.contains("values"))
                for (const auto& x : v.at("values")) c.vector.values.push_back(detail::complex_from_json(x, "vector.values"));
        }
        detail::read_opt(j, "tolerance", c.tolerance);
        if (j.contains("output")) {
            const json& o = j.at("output");
            detail::check_keys(o, {"path", "format"}, "output");
            detail::read_opt(o, "path", c.output.path);
            detail::read_opt(o, "format", c.output.format);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    validate(c);
    return c;
}

inline nlohmann::ordered_json config_to_json(const ProblemConfig& c) {
    using detail::json;
    json j;
    j["schema"] = kConfigSchema;
    json o{{"kind", c.op.kind}, {"size", c.op.size}, {"spacing", c.op.spacing}, {"boundary", c.op.boundary},
           {"symbol", c.op.symbol}, {"modes", c.op.modes}, {"seed", c.op.seed}};
    o["values"] = json::array();
    for (cplx v : c.op.values) o["values"].push_back(detail::complex_to_json(v));
    j["operator"] = o;
    j["sigma"] = detail::complex_to_json(c.sigma);
    j["family"] = json{{"kind", c.family.kind}, {"alpha", c.family.alpha}};
    j["methods"] = c.methods;
    j["alphas"] = c.alphas;
    j["z_grid"] = json::array();
    for (cplx z : c.z_grid) j["z_grid"].push_back(detail::complex_to_json(z));
    j["trace"] = json{{"kinds", c.trace.kinds}, {"theta", c.trace.theta}, {"y0", c.trace.y0},
                      {"ratio", c.trace.ratio}, {"count", c.trace.count}};
    json v{{"kind", c.vector.kind}, {"seed", c.vector.seed}, {"complex", c.vector.complex_entries}};
    v["values"] = json::array();
    for (cplx x : c.vector.values) v["values"].push_back(detail::complex_to_json(x));
    j["vector"] = v;
    j["tolerance"] = c.tolerance;
    j["output"] = json{{"path", c.output.path}, {"format", c.output.format}};
    return j;
}

inline ProblemConfig parse_config(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

inline std::string emit_config(const ProblemConfig& c) { return config_to_json(c).dump(2) + "\n"; }

inline ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

// ---- realization ----

inline LinearOperator build_operator(const OperatorSpec& o) {
    if (o.kind == "laplacian")
        return build_laplacian_1d(o.size, o.spacing, o.boundary == "periodic" ? Boundary::periodic : Boundary::dirichlet);
    if (o.kind == "multiplier") {
        try {
            return build_fourier_multiplier(named_symbol(o.symbol), o.modes);
        } catch (const Error& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
    if (o.kind == "diagonal") {
        Vec d(Eigen::Index(o.values.size()));
        for (std::size_t k = 0; k < o.values.size(); ++k) {
            if (o.values[k].real() > 0) throw ConfigError("config: diagonal entries need Re <= 0 (tempered generator)");
            d(Eigen::Index(k)) = o.values[k];
        }
        return LinearOperator::diagonal(d);
    }
    return random_negative_hermitian(o.size, o.seed);
}

inline Vec build_vector(const VectorSpec& v, Eigen::Index n) {
    if (v.kind == "ones") return Vec::Ones(n);
    if (v.kind == "values") {
        if (Eigen::Index(v.values.size()) != n) throw ConfigError("config: vector.values length differs from the operator size");
        Vec f(n);
        for (Eigen::Index k = 0; k < n; ++k) f(k) = v.values[std::size_t(k)];
        return f;
    }
    return random_vector(n, v.seed, v.complex_entries);
}

inline bool is_cosine_kind(const FamilySpec& f) { return f.kind == "cosine" || f.kind == "integrated_cosine"; }

// Semigroup-kind family of order alpha for A.
inline OperatorFamily semigroup_of_order(const LinearOperator& A, double alpha) {
    return alpha == 0.0 ? heat_semigroup(A) : integrated_semigroup(A, alpha);
}

// Cosine-kind family of order alpha for A.
inline OperatorFamily cosine_of_order(const LinearOperator& A, double alpha) {
    return alpha == 0.0 ? cosine_family(A) : integrated_cosine(A, alpha);
}

inline OperatorFamily build_family(const FamilySpec& f, const LinearOperator& A) {
    return is_cosine_kind(f) ? cosine_of_order(A, f.alpha) : semigroup_of_order(A, f.alpha);
}

}  // namespace fracext
