#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "config.hpp"
#include "extension.hpp"
#include "families.hpp"
#include "funcalc.hpp"
#include "kernels.hpp"
#include "operators.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace fracext {

struct Check {
    std::string suite;
    std::string name;
    double value = 0.0;      // measured discrepancy
    double tolerance = 0.0;  // pass iff value <= tolerance
    bool pass = false;
    std::string note;        // error text when the check threw
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"specfun", "quadrature", "kernels", "operators",
                                                "families", "funcalc",    "extension"};
    return names;
}

namespace detail {

class CheckList {
public:
    CheckList(std::string suite, std::vector<Check>& out) : suite_(std::move(suite)), out_(out) {}

    // Records |value| <= tol; an exception counts as a failure with its message.
    void add(const std::string& name, double tol, const std::function<double()>& measure) {
        Check c{suite_, name, NAN, tol, false, ""};
        try {
            c.value = measure();
            c.pass = std::isfinite(c.value) && c.value <= tol;
        } catch (const std::exception& e) {
            c.note = e.what();
        }
        out_.push_back(std::move(c));
    }

private:
    std::string suite_;
    std::vector<Check>& out_;
};

inline double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }
inline double rel(const Vec& got, const Vec& want) { return relative_residual(got, want); }

inline void suite_specfun(std::vector<Check>& out, unsigned long long seed) {
    CheckList c("specfun", out);
    c.add("gamma(1/2) = sqrt(pi)", 1e-13, [] { return rel(gamma(0.5), std::sqrt(pi)); });
    c.add("gamma(-1/2) = -2 sqrt(pi)", 1e-13, [] { return rel(gamma(-0.5), -2.0 * std::sqrt(pi)); });
    c.add("recurrence gamma(x+1) = x gamma(x), 100 draws", 1e-12, [seed] {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-10.0, 10.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const cplx x(u(rng), u(rng));
            worst = std::max(worst, rel(gamma(x + 1.0), x * gamma(x)));
        }
        return worst;
    });
    c.add("reflection gamma(x)gamma(1-x)sin(pi x)/pi = 1", 1e-12, [seed] {
        std::mt19937_64 rng(seed + 1);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const cplx x(u(rng) + 0.013, u(rng));
            worst = std::max(worst, std::abs(gamma(x) * gamma(1.0 - x) * std::sin(pi * x) / pi - 1.0));
        }
        return worst;
    });
    c.add("lower gamma (1/2, 1) = sqrt(pi) erf(1)", 1e-10,
          [] { return rel(lower_incomplete_gamma(0.5, 1.0), std::sqrt(pi) * std::erf(1.0)); });
    c.add("lower gamma (1, i pi) = 2", 1e-10, [] { return rel(lower_incomplete_gamma(1.0, cplx(0, pi)), 2.0); });
    c.add("lower gamma (a, 80) -> Gamma(a)", 1e-10, [] {
        return std::max(rel(lower_incomplete_gamma(0.3, 80.0), gamma(0.3)), rel(lower_incomplete_gamma(1.7, 80.0), gamma(1.7)));
    });
    c.add("c_{1/2} = -1, d_{1/2} = 2/pi", 1e-13, [] {
        const auto k = constants_for(0.5);
        return std::max(rel(k.c_sigma, -1.0), rel(k.d_sigma, 2.0 / pi));
    });
    c.add("kappa_{1/4} = sqrt(2/pi)", 1e-13, [] { return rel(*constants_for(0.25).kappa_sigma, std::sqrt(2.0 / pi)); });
    c.add("neumann_factor / (2 sigma) = c_sigma", 1e-15, [] {
        double worst = 0.0;
        for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const auto k = constants_for(s);
            worst = std::max(worst, rel(k.neumann_factor / (2.0 * s), k.c_sigma));
        }
        return worst;
    });
}

inline void suite_quadrature(std::vector<Check>& out, unsigned long long) {
    CheckList c("quadrature", out);
    c.add("int e^{-t} = 1", 1e-10, [] {
        return rel(integrate_halfline([](double t) { return cplx(std::exp(-t)); }, {DecayHint::exponential(1.0)}).value, 1.0);
    });
    c.add("int t^{-1/2} e^{-t} = sqrt(pi)", 1e-10, [] {
        auto r = integrate_halfline([](double t) { return cplx(std::exp(-t) / std::sqrt(t)); },
                                    {DecayHint::algebraic_at_zero(-0.5), DecayHint::exponential(1.0)});
        return rel(r.value, std::sqrt(pi));
    });
    c.add("int_0^pi e^{is} = 2i", 1e-10,
          [] { return rel(integrate_interval([](double s) { return std::exp(cplx(0, s)); }, 0.0, pi).value, cplx(0, 2)); });
    c.add("int_0^1 (1-s)^{-1/2} = 2", 1e-10, [] {
        return rel(integrate_interval([](double s) { return cplx(std::pow(1.0 - s, -0.5)); }, 0.0, 1.0, {}, {0.0, -0.5}).value,
                   2.0);
    });
    c.add("substitution invariance t -> 1/s", 1e-9, [] {
        const Kernel b = Kernel::b(0.3, 1.0);
        auto r1 = integrate_halfline([&](double t) { return b.value(t); },
                                     {DecayHint::essential_at_zero(0.25), DecayHint::algebraic(1.3)}, {1e-12});
        auto r2 = integrate_halfline([&](double s) { return b.value(1.0 / s) / (s * s); },
                                     {DecayHint::algebraic_at_zero(-0.7), DecayHint::exponential(0.25)}, {1e-12});
        return rel(r1.value, r2.value);
    });
    c.add("richardson on 2 + y recovers 2", 1e-13, [] {
        std::vector<ExtrapolationSample<cplx>> s;
        for (int k = 0; k < 6; ++k) s.push_back({std::pow(0.5, k), 2.0 + std::pow(0.5, k)});
        return rel(richardson_limit<cplx>(std::span<const ExtrapolationSample<cplx>>(s), 1.0).limit, 2.0);
    });
    c.add("richardson on e^{-y} recovers 1", 1e-10, [] {
        std::vector<ExtrapolationSample<cplx>> s;
        for (int k = 0; k < 10; ++k) s.push_back({0.5 * std::pow(0.7, k), std::exp(-0.5 * std::pow(0.7, k))});
        return rel(richardson_limit<cplx>(std::span<const ExtrapolationSample<cplx>>(s), 1.0).limit, 1.0);
    });
}

inline void suite_kernels(std::vector<Check>& out, unsigned long long seed) {
    CheckList c("kernels", out);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> us(0.05, 0.95), ur(0.3, 2.0), ua(-pi / 4 + 0.1, pi / 4 - 0.1);
    std::vector<std::pair<double, cplx>> draws;
    for (int i = 0; i < 20; ++i) {
        const double s = us(rng);
        draws.push_back({s, std::polar(ur(rng), ua(rng))});
    }
    c.add("int b^{sigma,z} = 1 (20 draws)", 1e-9, [&] {
        double worst = 0.0;
        for (auto [s, z] : draws) worst = std::max(worst, rel(weyl_integral(Kernel::b(s, z), 1.0, 0.0).value, 1.0));
        return worst;
    });
    c.add("B = h^sigma * b^{sigma,z}", 1e-8, [&] {
        double worst = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            auto [s, z] = draws[i];
            for (double t : {0.5, 1.0, 2.0})
                worst = std::max(worst, rel(convolve_halfline(Kernel::h(s), Kernel::b(s, z), t).value, Kernel::B(s, z).value(t)));
        }
        return worst;
    });
    c.add("derB identity", 1e-10, [] {
        const double s = 0.25;
        const cplx z(1.0, 0.2);
        const double t = 0.7;
        const cplx lhs = std::exp((1.0 - 2.0 * s) * std::log(z)) * Kernel::z_derivative_kernel(Kernel::B(s, z), 1).value(t);
        const cplx rhs = s * gamma(-s) / (std::pow(2.0, 2 * s - 1) * gamma(s)) * Kernel::b(1.0 - s, z).value(t);
        return rel(lhs, rhs);
    });
    c.add("kernel ODEs for b and B", 1e-10, [&] {
        double worst = 0.0;
        for (auto [s, z] : draws)
            for (double t : {0.3, 1.1}) {
                for (int which = 0; which < 2; ++which) {
                    const Kernel k = which == 0 ? Kernel::b(s, z) : Kernel::B(s, z);
                    const cplx d1 = Kernel::z_derivative_kernel(k, 1).value(t), d2 = Kernel::z_derivative_kernel(k, 2).value(t);
                    const cplx dt = k.derivative(1, t);
                    const double scale = std::max({std::abs(d2), std::abs((1.0 - 2.0 * s) / z * d1), std::abs(dt)});
                    worst = std::max(worst, std::abs(d2 + (1.0 - 2.0 * s) / z * d1 - dt) / scale);
                }
            }
        return worst;
    });
    c.add("Euler identities", 1e-10, [&] {
        double worst = 0.0;
        for (auto [s, z] : draws) {
            const double t = 0.8;
            const Kernel b = Kernel::b(s, z), B = Kernel::B(s, z);
            const cplx eb = 2.0 * t * b.derivative(1, t) + z * Kernel::z_derivative_kernel(b, 1).value(t);
            const cplx eB = 2.0 * t * B.derivative(1, t) + z * Kernel::z_derivative_kernel(B, 1).value(t);
            worst = std::max({worst, rel(eb, -2.0 * b.value(t)), rel(eB, -2.0 * (1.0 - s) * B.value(t))});
        }
        return worst;
    });
    c.add("W^{1/2} W^{1/2} = W^1 on e_1 and b", 1e-9, [] {
        double worst = 0.0;
        for (const Kernel& k : {Kernel::exp_eps(1.0), Kernel::b(0.5, 1.0)}) {
            auto inner = [&](cplx t) { return weyl_derivative(k, 0.5, t).value; };
            const std::vector<DecayHint> h{DecayHint::algebraic(3.0), DecayHint::scale(1.0)};
            const cplx twice = weyl_derivative_analytic(inner, 0.5, 1.0, h, 0.25, 16, {1e-11}).value;
            worst = std::max(worst, rel(twice, weyl_derivative(k, 1.0, 1.0).value));
        }
        return worst;
    });
    c.add("W^{-beta} e_eps = eps^{-beta} e_eps", 1e-10, [] {
        return rel(weyl_integral(Kernel::exp_eps(2.0), 0.7, 0.5).value, std::pow(2.0, -0.7) * std::exp(-1.0));
    });
    c.add("sobolev norm of e_1 at alpha = 0 is 1", 1e-9, [] { return std::abs(sobolev_norm(Kernel::exp_eps(1.0), 0.0).value - 1.0); });
}

inline void suite_operators(std::vector<Check>& out, unsigned long long seed) {
    CheckList c("operators", out);
    c.add("Dirichlet n=3 eigenvalues", 1e-12, [] {
        auto sd = spectral_decompose(build_laplacian_1d(3, 1.0, Boundary::dirichlet));
        std::vector<double> e;
        for (Eigen::Index k = 0; k < 3; ++k) e.push_back(sd.eigenvalues(k).real());
        std::sort(e.begin(), e.end());
        return std::max({std::abs(e[0] + 2 + std::sqrt(2.0)), std::abs(e[1] + 2), std::abs(e[2] + 2 - std::sqrt(2.0))});
    });
    c.add("random Hermitian reconstruction", 1e-10, [seed] {
        auto A = random_negative_hermitian(8, seed);
        auto sd = spectral_decompose(A);
        return (sd.basis * sd.eigenvalues.asDiagonal() * sd.inverse_basis - A.to_dense()).norm() / A.norm();
    });
    c.add("resolvent identity", 1e-10, [seed] {
        auto A = build_laplacian_1d(8, 1.0, Boundary::dirichlet);
        Vec f = random_vector(8, seed);
        const cplx l(0.7, 0.3), m(2.0, -1.0);
        Vec lhs = resolvent_solve(A, l, f) - resolvent_solve(A, m, f);
        Vec rhs = (m - l) * resolvent_solve(A, l, resolvent_solve(A, m, f));
        return relative_residual(lhs, rhs);
    });
    c.add("||lambda (lambda - A)^{-1}|| <= 1", 1e-12, [] {
        auto A = build_laplacian_1d(8, 1.0, Boundary::dirichlet);
        double worst = 0.0;
        for (double l : {0.1, 1.0, 10.0}) {
            Mat R = (l * Mat::Identity(8, 8) - A.to_dense()).inverse() * l;
            worst = std::max(worst, operator_norm(R) - 1.0);
        }
        return std::max(worst, 0.0);
    });
}

inline void suite_families(std::vector<Check>& out, unsigned long long seed) {
    CheckList c("families", out);
    const auto L = build_laplacian_1d(8, 1.0, Boundary::dirichlet);
    const Vec f = random_vector(8, seed);
    c.add("semigroup law T(0.3)T(0.7) = T(1)", 1e-11, [&] {
        auto T = heat_semigroup(L);
        return relative_residual(T(0.3, T(0.7, f)), T(1.0, f));
    });
    c.add("cosine evenness", 1e-15, [&] {
        auto C = cosine_family(L);
        return relative_residual(C.evaluate(-0.8, f), C.evaluate(0.8, f));
    });
    c.add("resolvent identities over the corpus", 1e-8, [&] {
        const std::vector<LinearOperator> ops{LinearOperator::diagonal(Vec::Constant(1, -1.0)),
                                              build_fourier_multiplier(named_symbol("i*xi^3"), {-2, -1, 1, 2}), L};
        double worst = 0.0;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const Vec g = random_vector(ops[i].dimension(), seed + i, true);
            for (double a : {0.0, 1.0, 1.5})
                for (double l : {0.5, 1.0, 2.0}) {
                    worst = std::max(worst, verify_resolvent(semigroup_of_order(ops[i], a), l, g));
                    if (ops[i].is_self_adjoint()) worst = std::max(worst, verify_resolvent(cosine_of_order(ops[i], a), l, g));
                }
        }
        return worst;
    });
    c.add("integra identity alpha = 1, t = 0.5", 1e-8,
          [&] { return integra_identity_residual(integrated_semigroup(L, 1.0), f, 0.5); });
    c.add("cosine to semigroup", 1e-7, [&] {
        return relative_residual(cosine_to_semigroup(cosine_family(L), 1.0, f), heat_semigroup(L)(1.0, f));
    });
    c.add("temperedness (max <= 10 x median)", 0.0, [&] {
        const auto r = temperedness(integrated_semigroup(build_fourier_multiplier(named_symbol("i*xi^3"), {-2, -1, 1, 2}), 1.0));
        return r.ok ? 0.0 : 1.0;
    });
}

inline void suite_funcalc(std::vector<Check>& out, unsigned long long seed) {
    CheckList c("funcalc", out);
    const auto L = build_laplacian_1d(8, 1.0, Boundary::dirichlet);
    const Vec f = random_vector(8, seed);
    c.add("balakrishnan vs oracle", 1e-8, [&] {
        double worst = 0.0;
        for (double s : {0.25, 0.5, 0.75})
            worst = std::max(worst, relative_residual(balakrishnan_power(L, s, f).value, spectral_power_oracle(L, s, f).value));
        return worst;
    });
    c.add("integrated formula vs oracle (alpha 0, 1, 1.5)", 1e-6, [&] {
        double worst = 0.0;
        for (double a : {0.0, 1.0, 1.5})
            worst = std::max(worst, relative_residual(integrated_power(semigroup_of_order(L, a), 0.3, f).value,
                                                      spectral_power_oracle(L, 0.3, f).value));
        return worst;
    });
    c.add("(eps - A)^{-sigma} = pi(e_eps h^sigma)", 1e-8, [&] {
        const Vec want = spectral_decompose(L).apply_function([](cplx a) { return std::pow(0.5 - a, -0.4); }, f);
        return relative_residual(shifted_negative_power(integrated_semigroup(L, 1.0), 0.5, 0.4, f), want);
    });
    c.add("cero identity, e_eps, alpha = 1", 1e-8,
          [&] { return cero_residual(Kernel::exp_eps(0.7), integrated_semigroup(L, 1.0), f); });
    c.add("shifted-power limit decays monotonically", 0.0, [&] {
        return msm_limit_residual(L, 0.5, f, {1.0, 0.1, 0.01, 0.001}).monotone ? 0.0 : 1.0;
    });
}

inline void suite_extension(std::vector<Check>& out, unsigned long long seed) {
    CheckList c("extension", out);
    const auto L = build_laplacian_1d(8, 1.0, Boundary::dirichlet);
    const Vec f = random_vector(8, seed);
    const Vec one = Vec::Ones(1);
    const auto S = LinearOperator::diagonal(Vec::Constant(1, -1.0));
    c.add("scalar u(y) = e^{-y}", 1e-9, [&] {
        double worst = 0.0;
        for (double y : {0.25, 1.0, 2.0})
            worst = std::max(worst, rel(solve_semigroup_form(heat_semigroup(S), 0.5, y, one).value(0), std::exp(-y)));
        return worst;
    });
    c.add("cross-formula agreement", 1e-6, [&] {
        const cplx z(0.7, 0.1);
        const Vec u = solve_semigroup_form(heat_semigroup(L), 0.3, z, f).value;
        return std::max({relative_residual(solve_regularized(heat_semigroup(L), 0.3, z, f).value, u),
                         relative_residual(solve_fractional_data(heat_semigroup(L), 0.3, z, f).value, u),
                         relative_residual(solve_cosine_form(cosine_family(L), 0.3, z, f).value, u),
                         relative_residual(solve_cosine_fractional(cosine_family(L), 0.3, z, f).value, u)});
    });
    c.add("neumann trace vs oracle", 1e-4, [&] {
        ExtensionHandle h(heat_semigroup(L), 0.3, f);
        return relative_residual(neumann_trace(h).power_estimate, spectral_power_oracle(L, 0.3, f).value);
    });
    c.add("quotient = neumann / (2 sigma)", 1e-4, [&] {
        ExtensionHandle h(heat_semigroup(L), 0.3, f);
        return relative_residual(quotient_trace(h).limit, neumann_trace(h).limit / 0.6);
    });
    c.add("PDE residual second order (|ratio - 4|)", 0.5, [&] {
        ExtensionHandle h(heat_semigroup(L), 0.3, f);
        return std::abs(pde_order_check(h, 0.8, 0.08).ratio - 4.0);
    });
    c.add("rotation corollary", 1e-5, [&] {
        const auto sd = spectral_decompose(L);
        const auto H = LinearOperator::diagonal(sd.eigenvalues);
        const auto iH = LinearOperator::diagonal(cplx(0, 1) * sd.eigenvalues);
        const Vec g = random_vector(8, seed + 3, true);
        return relative_residual(rotate_imaginary(heat_semigroup(H), 0.3, 0.5, g),
                                 solve_semigroup_form(integrated_semigroup(iH, 1.0), 0.3, 0.5, g).value);
    });
}

}  // namespace detail

// Runs the named suite ("all" runs every suite); unknown names raise ConfigError.
inline std::vector<Check> run_suite(const std::string& name, unsigned long long seed = 11) {
    std::vector<Check> out;
    auto one = [&](const std::string& s) {
        if (s == "specfun") detail::suite_specfun(out, seed);
        else if (s == "quadrature") detail::suite_quadrature(out, seed);
        else if (s == "kernels") detail::suite_kernels(out, seed);
        else if (s == "operators") detail::suite_operators(out, seed);
        else if (s == "families") detail::suite_families(out, seed);
        else if (s == "funcalc") detail::suite_funcalc(out, seed);
        else if (s == "extension") detail::suite_extension(out, seed);
        else {
            std::string known;
            for (const auto& n : suite_names()) known += n + ", ";
            throw ConfigError("unknown suite '" + s + "' (known: " + known + "all)");
        }
    };
    if (name == "all")
        for (const auto& s : suite_names()) one(s);
    else
        one(name);
    return out;
}

}  // namespace fracext
