#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "families.hpp"
#include "kernels.hpp"
#include "operators.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace fracext {

enum class PowerMethod { balakrishnan, integrated_formula, spectral_oracle, shifted_limit };

inline const char* to_string(PowerMethod m) {
    switch (m) {
        case PowerMethod::balakrishnan: return "balakrishnan";
        case PowerMethod::integrated_formula: return "integrated_formula";
        case PowerMethod::spectral_oracle: return "spectral_oracle";
        case PowerMethod::shifted_limit: return "shifted_limit";
    }
    return "?";
}

struct FractionalPowerResult {
    Vec value;
    PowerMethod method = PowerMethod::spectral_oracle;
    double error_estimate = 0.0;
};

// pi_alpha(phi) f = int_0^inf W^alpha phi(t) T_alpha(t) f dt.
inline ModalResult pi_alpha(const Kernel& phi, const OperatorFamily& fam, const Vec& f, const ModalOptions& o = {}) {
    return modal_apply(phi, fam.alpha(), fam, f, ProfilePart::value, o);
}

// Same with a caller-supplied W^alpha phi on the real half-line (hints describe W^alpha phi(t) T(t)).
inline ModalResult pi_alpha(const std::function<cplx(double)>& weyl_phi, const std::vector<DecayHint>& hints,
                            const OperatorFamily& fam, const Vec& f, const ModalOptions& o = {}) {
    const auto& sd = fam.spectrum();
    double err = 0.0;
    Vec c = modal_coefficients(sd.eigenvalues, [&](cplx e) {
        std::vector<DecayHint> h = hints;
        if (e != cplx(0)) h.push_back(DecayHint::scale(1.0 / std::abs(e)));
        auto g = [&](double t) -> cplx { return weyl_phi(t) * fam.modal_value(e, t); };
        return integrate_halfline(g, std::span<const DecayHint>(h), o.quad);
    }, &err);
    return {sd.apply_diagonal(c, f), err * f.norm()};
}

// Relative residual of -A pi(phi) f = pi(phi') f + phi(0) f, with pi(phi') = -int W^{alpha+1} phi T_alpha.
inline double cero_residual(const Kernel& phi, const OperatorFamily& fam, const Vec& f, const ModalOptions& o = {}) {
    const Vec lhs = -fam.generator().apply(pi_alpha(phi, fam, f, o).value);
    const Vec rhs = -modal_apply(phi, fam.alpha() + 1.0, fam, f, ProfilePart::value, o).value + phi.at_zero() * f;
    return relative_residual(lhs, rhs);
}

// Ground truth: basis diag((-a_k)^sigma) inverse_basis f, principal branch (sigma = 1 allowed).
inline FractionalPowerResult spectral_power_oracle(const LinearOperator& A, cplx sigma, const Vec& f) {
    if (!(sigma.real() > 0 && sigma.real() <= 1.0)) throw DomainError("spectral_power_oracle: requires 0 < Re sigma <= 1");
    const auto sd = spectral_decompose(A);
    const double null_level = 1e-12 * A.norm();  // eigenvalues below this are treated as exact zeros
    FractionalPowerResult r;
    r.value = sd.apply_function([&](cplx a) { return std::abs(a) <= null_level ? cplx(0.0) : pow(-a, sigma); }, f);
    r.method = PowerMethod::spectral_oracle;
    return r;
}

// (sin(pi sigma)/pi) int_0^inf lambda^{sigma-1} (lambda - A)^{-1} (-A f) d lambda, split at ||A||.
inline FractionalPowerResult balakrishnan_power(const LinearOperator& A, const FracOrder& sigma, const Vec& f,
                                                const QuadOptions& opt = {1e-12, 0.0, 3, 10}) {
    const cplx s = sigma.value();
    const Vec g = -A.apply(f);
    FractionalPowerResult r;
    r.method = PowerMethod::balakrishnan;
    if (g.norm() == 0.0) {
        r.value = Vec::Zero(f.size());
        return r;
    }
    const double nA = A.norm();
    std::vector<DecayHint> hints{DecayHint::algebraic_at_zero(s.real() - 1.0), DecayHint::algebraic(2.0 - s.real()),
                                 DecayHint::scale(nA)};
    const auto sd = spectral_decompose(A);
    double smallest = nA;
    bool singular = false;
    for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
        if (std::abs(sd.eigenvalues(k)) > 1e-12 * nA) smallest = std::min(smallest, std::abs(sd.eigenvalues(k)));
        else singular = true;
    }
    hints.push_back(DecayHint::scale(smallest));
    // With a kernel, (lambda - A)^{-1} A f is taken mode by mode so that null modes drop out exactly as lambda -> 0.
    auto integrand = [&](double lam) -> Vec {
        const cplx w = std::exp((s - 1.0) * std::log(lam));
        if (!singular) return w * resolvent_solve(A, lam, g);
        Vec d(sd.eigenvalues.size());
        for (Eigen::Index k = 0; k < d.size(); ++k) {
            const cplx mu = sd.eigenvalues(k);
            d(k) = std::abs(mu) > 1e-12 * nA ? -mu / (lam - mu) : cplx(0.0);
        }
        return w * sd.apply_diagonal(d, f);
    };
    auto q = integrate_halfline(integrand, std::span<const DecayHint>(hints), opt);
    const cplx c = std::sin(pi * s) / pi;
    r.value = c * q.value;
    r.error_estimate = std::abs(c) * q.error_estimate;
    return r;
}

// Gamma(sigma+alpha+1)/(Gamma(-sigma)Gamma(1+sigma)) int_0^inf (T_alpha(t) f - t^alpha f/Gamma(alpha+1)) t^{-sigma-alpha-1} dt.
inline FractionalPowerResult integrated_power(const OperatorFamily& fam, const FracOrder& sigma, const Vec& f,
                                              const ModalOptions& o = {}) {
    if (fam.is_cosine()) throw ContractError("integrated_power: requires a semigroup-kind family");
    const cplx s = sigma.value();
    const double a = fam.alpha();
    const auto& sd = fam.spectrum();
    double err = 0.0;
    Vec c = modal_coefficients(sd.eigenvalues, [&](cplx e) -> QuadratureResult<cplx> {
        if (e == cplx(0)) return {0.0, 0.0, 0};
        const double th = detail::choose_ray(AngleWindow{-pi / 2, pi / 2}, e);
        std::vector<DecayHint> h{DecayHint::algebraic_at_zero(-s.real()), DecayHint::algebraic(1.0 + s.real()),
                                 DecayHint::scale(1.0), DecayHint::scale(1.0 / std::abs(e))};
        const bool closed = fam.method() == ProfileMethod::closed_form;
        auto g = [&](cplx t) -> cplx {
            const cplx lt = std::log(t);
            // deviation / t^{alpha+1} = e E_{1,alpha+2}(e t) in closed form, free of overflowing powers
            if (closed) {
                const cplx q = a == 0.0 ? (std::abs(e * t) < 1e-300 ? e : expm1(e * t) / t) : e * mittag_leffler1(a + 2.0, e * t);
                return q * std::exp(-s * lt);
            }
            if (std::abs(t) < 1e-60) return e * rgamma(a + 2.0) * std::exp(-s * lt);
            return (fam.term_deviation(e, t) * std::exp((-a - 1.0) * lt)) * std::exp(-s * lt);
        };
        return integrate_ray(g, th, std::span<const DecayHint>(h), o.quad);
    }, &err);
    const cplx k = gamma(s + a + 1.0) / (gamma(-s) * gamma(1.0 + s));
    FractionalPowerResult r;
    r.value = k * sd.apply_diagonal(c, f);
    r.error_estimate = std::abs(k) * err * f.norm();
    r.method = PowerMethod::integrated_formula;
    return r;
}

// (eps - A)^{-sigma} f = pi_alpha(e_eps h^sigma) f.
inline Vec shifted_negative_power(const OperatorFamily& fam, double eps, const FracOrder& sigma, const Vec& f,
                                  const ModalOptions& o = {}) {
    if (!(eps > 0)) throw DomainError("shifted_negative_power: requires eps > 0");
    return pi_alpha(Kernel::times_exp(Kernel::h(sigma.value()), eps), fam, f, o).value;
}

inline Vec shifted_negative_power(const LinearOperator& A, double eps, const FracOrder& sigma, const Vec& f) {
    return shifted_negative_power(heat_semigroup(A), eps, sigma, f);
}

struct MsmReport {
    std::vector<double> eps;
    std::vector<double> residuals;  // ||(eps - A)^{-sigma} (-A)^sigma f - f|| / ||f||
    bool monotone = false;
    double final_residual = 0.0;
};

// Limit (eps - A)^{-sigma} (-A)^sigma f -> f as eps -> 0+.
inline MsmReport msm_limit_residual(const OperatorFamily& fam, const FracOrder& sigma, const Vec& f,
                                    const std::vector<double>& eps_sequence) {
    if (eps_sequence.empty()) throw ContractError("msm_limit_residual: empty eps sequence");
    for (std::size_t i = 1; i < eps_sequence.size(); ++i)
        if (!(eps_sequence[i] < eps_sequence[i - 1])) throw ContractError("msm_limit_residual: eps must decrease");
    const Vec g = spectral_power_oracle(fam.generator(), sigma.value(), f).value;
    MsmReport r;
    r.eps = eps_sequence;
    for (double e : eps_sequence) {
        const Vec v = shifted_negative_power(fam, e, sigma, g);
        r.residuals.push_back((v - f).norm() / f.norm());
    }
    r.monotone = true;
    for (std::size_t i = 1; i < r.residuals.size(); ++i)
        if (!(r.residuals[i] < r.residuals[i - 1])) r.monotone = false;
    r.final_residual = r.residuals.back();
    return r;
}

inline MsmReport msm_limit_residual(const LinearOperator& A, const FracOrder& sigma, const Vec& f,
                                    const std::vector<double>& eps_sequence) {
    return msm_limit_residual(heat_semigroup(A), sigma, f, eps_sequence);
}

}  // namespace fracext
