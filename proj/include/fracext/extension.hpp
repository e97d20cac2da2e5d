#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "families.hpp"
#include "funcalc.hpp"
#include "kernels.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace fracext {

enum class ExtensionFormula { semigroup, regularized, fractional_data, cosine, cosine_fractional };

inline const char* to_string(ExtensionFormula f) {
    switch (f) {
        case ExtensionFormula::semigroup: return "semigroup";
        case ExtensionFormula::regularized: return "regularized";
        case ExtensionFormula::fractional_data: return "fractional_data";
        case ExtensionFormula::cosine: return "cosine";
        case ExtensionFormula::cosine_fractional: return "cosine_fractional";
    }
    return "?";
}

struct ExtensionEvaluation {
    SectorPoint z;
    Vec value;
    double error_estimate = 0.0;
    ExtensionFormula formula = ExtensionFormula::semigroup;
};

namespace detail {

inline void require_semigroup_kind(const OperatorFamily& fam) {
    if (fam.is_cosine()) throw ContractError("extension: this formula needs a semigroup-kind family");
}
inline void require_cosine_kind(const OperatorFamily& fam) {
    if (!fam.is_cosine()) throw ContractError("extension: this formula needs a cosine-kind family");
}

// (-A)^sigma f from the Balakrishnan integral.
inline Vec fractional_datum(const OperatorFamily& fam, const FracOrder& sigma, const Vec& f) {
    return balakrishnan_power(fam.generator(), sigma, f).value;
}

}  // namespace detail

// u(z) = pi_alpha(b^{sigma,z}) f, |arg z| < pi/4; computed as f + int W^alpha b (T_alpha - t^alpha/Gamma(alpha+1)) f
// (the kernel has unit mass), which stays accurate as z -> 0.
inline ExtensionEvaluation solve_semigroup_form(const OperatorFamily& fam, const FracOrder& sigma, cplx z, const Vec& f,
                                                const ModalOptions& o = {}) {
    detail::require_semigroup_kind(fam);
    require_sigma_band(sigma);
    const SectorPoint sp = SectorPoint::make(z, pi / 4);
    const auto r = modal_apply(Kernel::b(sigma, z), fam.alpha(), fam, f, ProfilePart::deviation, o);
    return {sp, f + r.value, r.error_estimate, ExtensionFormula::semigroup};
}

// u(z) = lim_{eps -> 0+} pi_alpha(B^{sigma,z} e_eps) (-A)^sigma f; diagnostic = last increment.
inline ExtensionEvaluation solve_regularized(const OperatorFamily& fam, const FracOrder& sigma, cplx z, const Vec& f,
                                             const std::vector<double>& eps_sequence = {1e-2, 1e-4, 1e-6, 1e-8},
                                             const ModalOptions& o = {}) {
    detail::require_semigroup_kind(fam);
    require_sigma_band(sigma);
    const SectorPoint sp = SectorPoint::make(z, pi / 4);
    if (eps_sequence.size() < 2) throw ContractError("solve_regularized: need at least two eps values");
    for (std::size_t i = 0; i < eps_sequence.size(); ++i)
        if (!(eps_sequence[i] > 0) || (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1])))
            throw ContractError("solve_regularized: eps sequence must be positive and decreasing");
    const auto& sd = fam.spectrum();
    const Vec coef = sd.inverse_basis * f;
    const double nA = std::max(fam.generator().norm(), 1e-300);
    for (Eigen::Index k = 0; k < coef.size(); ++k)
        if (std::abs(sd.eigenvalues(k)) <= 1e-12 * nA && std::abs(coef(k)) > 1e-12 * f.norm())
            throw DomainError("solve_regularized: f has a component in ker A, which this formula cannot reproduce");
    const Vec g = detail::fractional_datum(fam, sigma, f);
    const Kernel B = Kernel::B(sigma, z);
    Vec prev, cur;
    std::vector<double> inc;
    double qerr = 0.0;
    for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
        const auto r = modal_apply(Kernel::times_exp(B, eps_sequence[i]), fam.alpha(), fam, g, ProfilePart::value, o);
        cur = r.value;
        qerr = r.error_estimate;
        if (i > 0) inc.push_back((cur - prev).norm());
        prev = cur;
    }
    for (std::size_t i = 1; i < inc.size(); ++i)
        if (inc[i] > inc[i - 1] * (1.0 + 1e-6) + 1e-14 * cur.norm()) {
            std::ostringstream os;
            os << "solve_regularized: increments do not shrink (" << inc[i - 1] << " -> " << inc[i]
               << "); the family may not be tempered";
            throw ConvergenceError(os.str());
        }
    return {sp, cur, inc.back() + qerr, ExtensionFormula::regularized};
}

// u(z) = f + pi_alpha(B^{sigma,z} - h^sigma) (-A)^sigma f on the closed sector |arg z| <= pi/4.
inline ExtensionEvaluation solve_fractional_data(const OperatorFamily& fam, const FracOrder& sigma, cplx z, const Vec& f,
                                                 const ModalOptions& o = {}) {
    detail::require_semigroup_kind(fam);
    require_sigma_band(sigma);
    if (z == cplx(0)) return {SectorPoint{z, pi / 4}, f, 0.0, ExtensionFormula::fractional_data};
    const SectorPoint sp = SectorPoint::make(z, pi / 4, true);
    const Vec g = detail::fractional_datum(fam, sigma, f);
    const auto r = modal_apply(Kernel::B_minus_h(sigma, z), fam.alpha(), fam, g, ProfilePart::value, o);
    return {sp, f + r.value, r.error_estimate, ExtensionFormula::fractional_data};
}

// u(z) = d_sigma int W^alpha (z^{2 sigma} / (z^2 + t^2)^{sigma+1/2}) C_alpha(t) f dt, Re z > 0
// (the kernel has mass 1/d_sigma, so the deviation form is used as above).
inline ExtensionEvaluation solve_cosine_form(const OperatorFamily& c_alpha, const FracOrder& sigma, cplx z, const Vec& f,
                                             Branch br = Branch::principal, const ModalOptions& o = {}) {
    detail::require_cosine_kind(c_alpha);
    require_sigma_band(sigma);
    const SectorPoint sp = SectorPoint::make(z, pi / 2);
    const cplx d = constants_for(sigma).d_sigma;
    const auto r = modal_apply(Kernel::poisson_cosine(sigma, z, br), c_alpha.alpha(), c_alpha, f, ProfilePart::deviation, o);
    return {sp, f + d * r.value, std::abs(d) * r.error_estimate, ExtensionFormula::cosine};
}

// u(z) = f + kappa_sigma int W^alpha((z^2+t^2)^{sigma-1/2} - t^{2 sigma-1}) C_alpha(t) (-A)^sigma f dt, or for
// sigma = 1/2: f + (1/pi) int W^alpha Log(t^2/(z^2+t^2)) C_alpha(t) (-A)^{1/2} f dt.
inline ExtensionEvaluation solve_cosine_fractional(const OperatorFamily& c_alpha, const FracOrder& sigma, cplx z,
                                                   const Vec& f, Branch br = Branch::principal,
                                                   const ModalOptions& o = {}) {
    detail::require_cosine_kind(c_alpha);
    require_sigma_band(sigma);
    if (z == cplx(0)) return {SectorPoint{z, pi / 2}, f, 0.0, ExtensionFormula::cosine_fractional};
    const SectorPoint sp = SectorPoint::make(z, pi / 2);
    const Vec g = detail::fractional_datum(c_alpha, sigma, f);
    if (sigma.is_half()) {
        const auto r = modal_apply(Kernel::cosine_log(z), c_alpha.alpha(), c_alpha, g, ProfilePart::value, o);
        return {sp, f + r.value / pi, r.error_estimate / pi, ExtensionFormula::cosine_fractional};
    }
    const cplx kappa = *constants_for(sigma).kappa_sigma;
    const auto r = modal_apply(Kernel::cosine_fractional(sigma, z, br), c_alpha.alpha(), c_alpha, g, ProfilePart::value, o);
    return {sp, f + kappa * r.value, std::abs(kappa) * r.error_estimate, ExtensionFormula::cosine_fractional};
}

// ---- boundary traces ----

// Semigroup-form solution with its closed-form z-derivative (differentiated kernel, no differencing).
class ExtensionHandle {
public:
    ExtensionHandle(OperatorFamily fam, const FracOrder& sigma, Vec f, ModalOptions o = {})
        : fam_(std::move(fam)), sigma_(sigma), f_(std::move(f)), o_(o) {
        detail::require_semigroup_kind(fam_);
        require_sigma_band(sigma_);
    }

    const OperatorFamily& family() const { return fam_; }
    const FracOrder& sigma() const { return sigma_; }
    const Vec& datum() const { return f_; }

    Vec u_minus_f(cplx z) const {
        SectorPoint::make(z, pi / 4);
        return modal_apply(Kernel::b(sigma_, z), fam_.alpha(), fam_, f_, ProfilePart::deviation, o_).value;
    }
    Vec value(cplx z) const { return f_ + u_minus_f(z); }
    Vec derivative(cplx z) const {
        SectorPoint::make(z, pi / 4);
        const Kernel bz = Kernel::z_derivative_kernel(Kernel::b(sigma_, z), 1);
        return modal_apply(bz, fam_.alpha(), fam_, f_, ProfilePart::deviation, o_).value;
    }

private:
    OperatorFamily fam_;
    FracOrder sigma_;
    Vec f_;
    ModalOptions o_;
};

enum class TraceKind { neumann, quotient };

struct TraceEstimate {
    TraceKind kind = TraceKind::neumann;
    Vec limit;
    double diagnostic = 0.0;
    int samples_used = 0;
    Vec power_estimate;               // (-A)^sigma f recovered from the limit
    std::vector<double> y;            // grid
    std::vector<Vec> samples;         // raw sample per grid point
    std::vector<Vec> extrapolants;    // best extrapolant using samples 0..k
};

inline std::vector<double> default_trace_grid() {
    std::vector<double> y;
    for (int k = 0; k <= 12; ++k) y.push_back(0.5 * std::pow(0.7, k));
    return y;
}

// Exponents of the small-z expansion of both trace quotients: 2-2 sigma, 2, 4-2 sigma, 4, ...
inline std::vector<cplx> trace_exponents(cplx sigma, int count = 12) {
    std::vector<cplx> e;
    for (int k = 1; int(e.size()) < count; ++k) {
        e.push_back(2.0 * k - 2.0 * sigma);
        e.push_back(2.0 * k);
    }
    e.resize(std::size_t(count));
    return e;
}

struct TraceOptions {
    std::vector<double> grid = default_trace_grid();
    double max_relative_diagnostic = 1e-3;
};

namespace detail {

inline TraceEstimate finish_trace(TraceKind kind, const FracOrder& sigma, std::vector<double> y, std::vector<Vec> samples,
                                  const TraceOptions& opt) {
    std::vector<ExtrapolationSample<Vec>> s;
    for (std::size_t k = 0; k < y.size(); ++k) s.push_back({y[k], samples[k]});
    const auto ex = trace_exponents(sigma.value(), int(y.size()) - 1);
    const auto rr = richardson_limit<Vec>(std::span<const ExtrapolationSample<Vec>>(s), std::span<const cplx>(ex));
    TraceEstimate t;
    t.kind = kind;
    t.limit = rr.limit;
    t.diagnostic = rr.diagnostic;
    t.samples_used = int(y.size());
    t.y = std::move(y);
    t.samples = std::move(samples);
    t.extrapolants = rr.running;
    const auto k = constants_for(sigma);
    t.power_estimate = t.limit / (kind == TraceKind::neumann ? k.neumann_factor : k.c_sigma);
    if (!(t.diagnostic <= opt.max_relative_diagnostic * std::max(t.limit.norm(), 1e-300))) {
        std::ostringstream os;
        os << (kind == TraceKind::neumann ? "neumann_trace" : "quotient_trace") << ": extrapolation diagnostic "
           << t.diagnostic << " above threshold";
        throw ConvergenceError(os.str());
    }
    return t;
}

inline void check_trace_inputs(double theta, const std::vector<double>& grid) {
    if (!(std::abs(theta) < pi / 4)) throw DomainError("trace: ray direction must satisfy |theta| < pi/4");
    if (grid.size() < 3) throw ContractError("trace: grid needs at least 3 points");
}

}  // namespace detail

// lim z^{1-2 sigma} u'(z) = 2 sigma c_sigma (-A)^sigma f along z = y e^{i theta}.
inline TraceEstimate neumann_trace(const ExtensionHandle& u, double theta = 0.0, const TraceOptions& opt = {}) {
    detail::check_trace_inputs(theta, opt.grid);
    const cplx s = u.sigma().value();
    std::vector<Vec> samples(opt.grid.size());
    parallel_for(opt.grid.size(), [&](std::size_t k) {
        const cplx z = std::polar(opt.grid[k], theta);
        samples[k] = std::exp((1.0 - 2.0 * s) * std::log(z)) * u.derivative(z);
    });
    return detail::finish_trace(TraceKind::neumann, u.sigma(), opt.grid, std::move(samples), opt);
}

// lim (u(z) - f) / z^{2 sigma} = c_sigma (-A)^sigma f.
inline TraceEstimate quotient_trace(const ExtensionHandle& u, double theta = 0.0, const TraceOptions& opt = {}) {
    detail::check_trace_inputs(theta, opt.grid);
    const cplx s = u.sigma().value();
    std::vector<Vec> samples(opt.grid.size());
    parallel_for(opt.grid.size(), [&](std::size_t k) {
        const cplx z = std::polar(opt.grid[k], theta);
        samples[k] = std::exp(-2.0 * s * std::log(z)) * u.u_minus_f(z);
    });
    return detail::finish_trace(TraceKind::quotient, u.sigma(), opt.grid, std::move(samples), opt);
}

// ---- PDE residual ----

// ||u'' + ((1-2 sigma)/z) u' + A u|| / ||A u|| by centered differences of step h along arg z.
inline double pde_residual(const std::function<Vec(cplx)>& u_minus_f, const LinearOperator& A, const Vec& f, cplx sigma,
                           cplx z, double h) {
    if (!(h > 0) || h > std::abs(z) / 10.0 * (1 + 1e-12)) throw ContractError("pde_residual: requires 0 < h <= |z|/10");
    const cplx d = std::polar(h, arg(z));
    const Vec um = u_minus_f(z - d), u0 = u_minus_f(z), up = u_minus_f(z + d);
    const Vec u2 = (up - 2.0 * u0 + um) / (d * d);
    const Vec u1 = (up - um) / (2.0 * d);
    const Vec Au = A.apply(u0 + f);
    return (u2 + ((1.0 - 2.0 * sigma) / z) * u1 + Au).norm() / std::max(Au.norm(), 1e-300);
}

inline double pde_residual(const ExtensionHandle& u, cplx z, double h) {
    return pde_residual([&](cplx w) { return u.u_minus_f(w); }, u.family().generator(), u.datum(), u.sigma().value(), z, h);
}

struct PdeOrderCheck {
    double residual_h = 0.0;
    double residual_h2 = 0.0;
    double ratio = 0.0;  // residual(h) / residual(h/2), ~4 for second order
};

inline PdeOrderCheck pde_order_check(const ExtensionHandle& u, cplx z, double h) {
    PdeOrderCheck c;
    c.residual_h = pde_residual(u, z, h);
    c.residual_h2 = pde_residual(u, z, h / 2);
    c.ratio = c.residual_h / c.residual_h2;
    return c;
}

// ---- rotation to imaginary generators ----

// Solution for A = iH from the solution v for the generator H: u(y) = v(e^{i pi/4} y), evaluated on the
// boundary ray of the closed sector with the fractional-data formula.
inline Vec rotate_imaginary(const OperatorFamily& v_family, const FracOrder& sigma, double y, const Vec& f,
                            const ModalOptions& o = {}) {
    if (!(y >= 0)) throw DomainError("rotate_imaginary: requires y >= 0");
    if (y == 0.0) return f;
    return solve_fractional_data(v_family, sigma, std::polar(y, pi / 4), f, o).value;
}

inline std::function<Vec(cplx)> rotated_u_minus_f(const OperatorFamily& v_family, const FracOrder& sigma, const Vec& f,
                                                  const ModalOptions& o = {}) {
    const Vec g = detail::fractional_datum(v_family, sigma, f);
    return [=](cplx y) -> Vec {
        return modal_apply(Kernel::B_minus_h(sigma, y * std::polar(1.0, pi / 4)), v_family.alpha(), v_family, g,
                           ProfilePart::value, o)
            .value;
    };
}

}  // namespace fracext
