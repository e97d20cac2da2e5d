#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "kernels.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace fracext {

// int_0^t (t-s)^{alpha-1} e^{a s} ds / Gamma(alpha) = e^{at} a^{-alpha} gamma(alpha, at) / Gamma(alpha).
// Evaluated as t^alpha E_{1,alpha+1}(at), which is the same function without the branch bookkeeping.
inline cplx integrated_exponential(cplx a, double alpha, cplx t) {
    if (!(alpha >= 0)) throw ContractError("integrated_exponential: alpha must be nonnegative");
    if (alpha == 0.0) return std::exp(a * t);
    if (t == cplx(0)) return 0.0;
    if (a == cplx(0)) return pow(t, cplx(alpha)) * rgamma(alpha + 1.0);
    return pow(t, cplx(alpha)) * mittag_leffler1(alpha + 1.0, a * t);
}

// integrated_exponential - t^alpha / Gamma(alpha+1)  (= a * integrated_exponential(a, alpha+1, t)).
inline cplx integrated_exponential_deviation(cplx a, double alpha, cplx t) {
    if (alpha == 0.0) return expm1(a * t);
    if (t == cplx(0) || a == cplx(0)) return 0.0;
    return a * pow(t, cplx(alpha + 1.0)) * mittag_leffler1(alpha + 2.0, a * t);
}

enum class FamilyKind { semigroup, integrated_semigroup, cosine, integrated_cosine };
enum class ProfileMethod { closed_form, quadrature };
enum class ProfilePart { value, deviation };

inline const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::semigroup: return "semigroup";
        case FamilyKind::integrated_semigroup: return "integrated_semigroup";
        case FamilyKind::cosine: return "cosine";
        case FamilyKind::integrated_cosine: return "integrated_cosine";
    }
    return "?";
}

// One exponential component w * E_alpha(rate, t) of the scalar profile of an eigenvalue.
struct ModalTerm {
    cplx weight;
    cplx rate;
};

// T_alpha(t) or C_alpha(t) for a finite-dimensional generator, evaluated mode by mode.
class OperatorFamily {
public:
    OperatorFamily(FamilyKind kind, double alpha, LinearOperator generator, ProfileMethod method = ProfileMethod::closed_form)
        : kind_(kind), alpha_(alpha), gen_(std::make_shared<const LinearOperator>(std::move(generator))), method_(method) {
        if (!(alpha >= 0)) throw ContractError("OperatorFamily: alpha must be nonnegative");
        try {
            sd_ = std::make_shared<const SpectralDecomposition>(spectral_decompose(*gen_));
        } catch (const DefectiveError&) {
            if (kind != FamilyKind::semigroup) throw;
        }
    }

    FamilyKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    ProfileMethod method() const { return method_; }
    const LinearOperator& generator() const { return *gen_; }
    bool is_cosine() const { return kind_ == FamilyKind::cosine || kind_ == FamilyKind::integrated_cosine; }
    bool diagonalizable() const { return bool(sd_); }
    const SpectralDecomposition& spectrum() const {
        if (!sd_) throw DefectiveError("family generator is not diagonalizable; modal formulas unavailable");
        return *sd_;
    }

    std::vector<ModalTerm> terms(cplx eig) const {
        if (!is_cosine()) return {{1.0, eig}};
        const cplx w = std::sqrt(-eig);
        if (w == cplx(0)) return {{1.0, 0.0}};
        return {{0.5, cplx(0, 1) * w}, {0.5, cplx(0, -1) * w}};
    }

    // Scalar profile E_alpha(rate, t) of this family's order.
    cplx term_value(cplx rate, cplx t) const {
        if (method_ == ProfileMethod::closed_form) return integrated_exponential(rate, alpha_, t);
        return riemann_liouville(rate, t, ProfilePart::value);
    }
    cplx term_deviation(cplx rate, cplx t) const {
        if (method_ == ProfileMethod::closed_form) return integrated_exponential_deviation(rate, alpha_, t);
        return riemann_liouville(rate, t, ProfilePart::deviation);
    }

    cplx modal_value(cplx eig, cplx t) const {
        t = even_arg(t);
        cplx s = 0.0;
        for (const auto& m : terms(eig)) s += m.weight * term_value(m.rate, t);
        return s;
    }
    cplx modal_deviation(cplx eig, cplx t) const {
        t = even_arg(t);
        cplx s = 0.0;
        for (const auto& m : terms(eig)) s += m.weight * term_deviation(m.rate, t);
        return s;
    }

    Vec evaluate(cplx t, const Vec& f) const {
        check_dim(f);
        if (!sd_) return (t * gen_->to_dense()).exp() * f;
        return sd_->apply_function([&](cplx e) { return modal_value(e, t); }, f);
    }
    Vec operator()(double t, const Vec& f) const { return evaluate(cplx(t), f); }

    // T_alpha(t) f - t^alpha f / Gamma(alpha+1)
    Vec deviation(cplx t, const Vec& f) const {
        check_dim(f);
        if (!sd_) return evaluate(t, f) - f;
        return sd_->apply_function([&](cplx e) { return modal_deviation(e, t); }, f);
    }

    Mat matrix(cplx t) const {
        const Eigen::Index n = gen_->dimension();
        if (!sd_) return (t * gen_->to_dense()).exp();
        Vec d(n);
        for (Eigen::Index k = 0; k < n; ++k) d(k) = modal_value(sd_->eigenvalues(k), t);
        return sd_->basis * d.asDiagonal() * sd_->inverse_basis;
    }

    // Family of higher order defined by Riemann-Liouville integration of this one.
    OperatorFamily integrated(double beta) const {
        if (!(beta > alpha_)) throw ContractError("integrate_family: requires beta > alpha");
        if (!sd_) throw DefectiveError("integrate_family: generator is not diagonalizable");
        OperatorFamily r = *this;
        r.kind_ = is_cosine() ? FamilyKind::integrated_cosine : FamilyKind::integrated_semigroup;
        r.alpha_ = beta;
        r.method_ = ProfileMethod::quadrature;
        r.base_ = std::make_shared<const OperatorFamily>(*this);
        return r;
    }

    const OperatorFamily* base() const { return base_.get(); }

private:
    cplx even_arg(cplx t) const {
        if (is_cosine() && (t.real() < 0 || (t.real() == 0 && t.imag() < 0))) return -t;
        return t;
    }

    void check_dim(const Vec& f) const {
        if (f.size() != gen_->dimension()) throw ContractError("family evaluation: dimension mismatch");
    }

    // (t^g / Gamma(g)) int_0^1 (1-u)^{g-1} base(rate, t u) du, split at 1/2 with exact endpoints.
    cplx riemann_liouville(cplx rate, cplx t, ProfilePart part) const {
        if (t == cplx(0)) return 0.0;
        const OperatorFamily& b = *base_;
        const double g = alpha_ - b.alpha_;
        auto base_at = [&](cplx x) {
            return part == ProfilePart::value ? b.term_value(rate, x) : b.term_deviation(rate, x);
        };
        const double q_base = part == ProfilePart::value ? b.alpha_ : b.alpha_ + 1.0;
        QuadOptions opt{1e-13, 1e-300, 2, 10};
        auto g1 = [&](double v) -> cplx { return std::pow(v, g - 1.0) * base_at(t * (1.0 - v)); };
        auto g2 = [&](double u) -> cplx { return u <= 0.0 ? cplx(0) : std::pow(1.0 - u, g - 1.0) * base_at(t * u); };
        auto r1 = integrate_interval(g1, 0.0, 0.5, opt, EndpointHints{g - 1.0, 0.0});
        auto r2 = integrate_interval(g2, 0.0, 0.5, opt, EndpointHints{q_base == 0.0 ? 0.0 : std::min(q_base, 5.0), 0.0});
        return pow(t, cplx(g)) * rgamma(g) * (r1.value + r2.value);
    }

    FamilyKind kind_;
    double alpha_;
    std::shared_ptr<const LinearOperator> gen_;
    std::shared_ptr<const SpectralDecomposition> sd_;
    ProfileMethod method_;
    std::shared_ptr<const OperatorFamily> base_;
};

// ---- factories ----

inline OperatorFamily heat_semigroup(const LinearOperator& A) { return OperatorFamily(FamilyKind::semigroup, 0.0, A); }

// alpha-times integrated semigroup from the closed scalar form.
inline OperatorFamily integrated_semigroup(const LinearOperator& A, double alpha) {
    if (!(alpha > 0)) throw ContractError("integrated_semigroup: alpha must be positive (use heat_semigroup)");
    return OperatorFamily(FamilyKind::integrated_semigroup, alpha, A);
}

inline OperatorFamily integrate_family(const OperatorFamily& base, double beta) { return base.integrated(beta); }

namespace detail {

inline void require_cosine_generator(const LinearOperator& A, bool allow_non_self_adjoint) {
    if (!allow_non_self_adjoint && !A.is_self_adjoint())
        throw DomainError("cosine_family: generator must be self-adjoint (pass the override to proceed)");
    if (A.is_self_adjoint()) {
        const auto sd = spectral_decompose(A);
        const double tol = 1e-12 * std::max(1.0, A.norm());
        for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k)
            if (sd.eigenvalues(k).real() > tol)
                throw DomainError("cosine_family: generator must be negative semidefinite");
    }
}

}  // namespace detail

inline OperatorFamily cosine_family(const LinearOperator& A, bool allow_non_self_adjoint = false) {
    detail::require_cosine_generator(A, allow_non_self_adjoint);
    return OperatorFamily(FamilyKind::cosine, 0.0, A);
}

// Integrated cosine family; by default built by Riemann-Liouville quadrature on the cosine family.
inline OperatorFamily integrated_cosine(const LinearOperator& A, double alpha,
                                        ProfileMethod method = ProfileMethod::quadrature,
                                        bool allow_non_self_adjoint = false) {
    if (!(alpha > 0)) throw ContractError("integrated_cosine: alpha must be positive (use cosine_family)");
    detail::require_cosine_generator(A, allow_non_self_adjoint);
    if (method == ProfileMethod::quadrature) return integrate_family(OperatorFamily(FamilyKind::cosine, 0.0, A), alpha);
    return OperatorFamily(FamilyKind::integrated_cosine, alpha, A);
}

// ---- mode-wise integrals  int_0^inf W^order phi(t) P(t) dt ----

struct ModalOptions {
    QuadOptions quad{1e-12, 0.0, 3, 10};
};

struct ModalResult {
    Vec value;
    double error_estimate = 0.0;
};

namespace detail {

// Directions theta with Re(rate e^{i theta}) <= 0.
inline AngleWindow profile_window(cplx rate) {
    if (rate == cplx(0)) return {-pi, pi};
    double c = pi - arg(rate);
    if (c > pi) c -= 2 * pi;
    return {c - pi / 2, c + pi / 2};
}

inline double choose_ray(const AngleWindow& kernel_w, cplx rate) {
    constexpr double margin = 0.05;
    AngleWindow w = kernel_w.intersect({-pi / 2 + margin, pi / 2 - margin});
    const AngleWindow pw = profile_window(rate);
    AngleWindow both = w.intersect(pw);
    if (both.empty()) {
        // the profile window may wrap around +-pi
        both = w.intersect({pw.lo + 2 * pi, pw.hi + 2 * pi});
        if (both.empty()) both = w.intersect({pw.lo - 2 * pi, pw.hi - 2 * pi});
    }
    if (both.empty() || both.hi - both.lo < 1e-9)
        throw DomainError("modal integral: no direction where both the kernel and the family profile decay");
    // the real axis when it lies well inside the window (near an edge the kernel barely decays there)
    if (both.lo <= -margin && both.hi >= margin && rate.imag() == 0.0) return 0.0;
    return both.mid();
}

inline cplx weyl_kernel_value(const Kernel& k, double order, cplx t, const WeylOptions& wo) {
    if (order == std::floor(order)) {
        const int n = int(order);
        return (n % 2 == 0 ? 1.0 : -1.0) * k.derivative(n, t);
    }
    return weyl_derivative(k, order, t, wo).value;
}

}  // namespace detail

// Integral over one exponential component: int_0^inf W^order phi(t) E(rate, t) dt along a rotated ray.
inline QuadratureResult<cplx> modal_term_integral(const Kernel& phi, double order, const OperatorFamily& fam, cplx rate,
                                                  ProfilePart part, const ModalOptions& o = {}) {
    const double a = fam.alpha();
    if (part == ProfilePart::deviation && rate == cplx(0)) return {0.0, 0.0, 0};
    const double th = detail::choose_ray(phi.window(), rate);
    const cplx dir = std::polar(1.0, th);
    const KernelShape sh = phi.shape(order);

    // profile: ~ t^{q0} near 0, ~ t^{g} along the ray at infinity (g = -inf: exponential only)
    const double q0 = part == ProfilePart::value ? a : a + 1.0;
    double g;
    if (part == ProfilePart::deviation) g = a;
    else if (rate == cplx(0)) g = a;
    else g = a == 0.0 ? -INFINITY : a - 1.0;
    const double decay = rate == cplx(0) ? 0.0 : -(rate * dir).real();

    std::vector<DecayHint> hints;
    double smallest_scale = INFINITY;
    for (double s : sh.scales) {
        hints.push_back(DecayHint::scale(s));
        smallest_scale = std::min(smallest_scale, s);
    }
    if (rate != cplx(0)) {
        hints.push_back(DecayHint::scale(1.0 / std::abs(rate)));
        smallest_scale = std::min(smallest_scale, 1.0 / std::abs(rate));
    }
    // below t_cut the integrable t^{qz} piece is under 1e-16 relative; skipping it avoids overflow of the
    // separately evaluated singular kernel
    double t_cut = 0.0;
    if (sh.essential_scale) {
        hints.push_back(DecayHint::essential_at_zero(*sh.essential_scale));
    } else {
        const double qz = sh.zero_exponent + (q0 == 0.0 ? 0.0 : q0);
        if (!(qz > -1)) throw DomainError("modal integral diverges at t = 0 (kernel too singular for this order)");
        if (qz != 0.0) hints.push_back(DecayHint::algebraic_at_zero(std::min(qz, 6.0)));
        if (sh.zero_exponent < 0 && qz + 1.0 > 0.1 && std::isfinite(smallest_scale))
            t_cut = smallest_scale * std::pow(10.0, -16.0 / std::min(qz + 1.0, 1.0));
    }
    double exp_rate = 0.0;
    if (sh.eps) exp_rate = (*sh.eps * dir).real();
    if (std::isinf(g) && decay > 0) exp_rate = std::max(exp_rate, decay);
    const bool kernel_exp = bool(sh.eps) || !std::isfinite(sh.tail_power);
    if (kernel_exp || std::isinf(g)) {
        // a damped algebraic body keeps the algebraic map up to the damping scale
        if (sh.eps && std::isfinite(sh.tail_power_before_eps) && !std::isinf(g) && sh.tail_power_before_eps - g > 1.0)
            hints.push_back(DecayHint::algebraic(sh.tail_power_before_eps - g));
        if (exp_rate > 0) hints.push_back(DecayHint::exponential(exp_rate));
        else if (!sh.scales.empty()) hints.push_back(DecayHint::exponential(1.0 / sh.scales.front()));
        else throw DomainError("modal integral: integrand does not decay");
    } else {
        const double p = sh.tail_power - g;
        if (!(p > 1)) throw DomainError("modal integral diverges at infinity (kernel tail too slow for the family growth)");
        hints.push_back(DecayHint::algebraic(p));
    }

    WeylOptions wo;
    auto f = [&](cplx t) -> cplx {
        if (std::abs(t) < t_cut) return 0.0;
        const cplx prof = part == ProfilePart::value ? fam.term_value(rate, t) : fam.term_deviation(rate, t);
        if (prof == cplx(0)) return 0.0;
        return detail::weyl_kernel_value(phi, order, t, wo) * prof;
    };
    return integrate_ray(f, th, std::span<const DecayHint>(hints), o.quad);
}

inline QuadratureResult<cplx> modal_integral(const Kernel& phi, double order, const OperatorFamily& fam, cplx eig,
                                             ProfilePart part, const ModalOptions& o = {}) {
    QuadratureResult<cplx> acc{0.0, 0.0, 0};
    for (const auto& m : fam.terms(eig)) {
        auto r = modal_term_integral(phi, order, fam, m.rate, part, o);
        acc.value += m.weight * r.value;
        acc.error_estimate += std::abs(m.weight) * r.error_estimate;
        acc.evaluations += r.evaluations;
    }
    return acc;
}

// Coefficient per eigenvalue (duplicates computed once), evaluated concurrently.
template <class Coef>
Vec modal_coefficients(const Vec& eigenvalues, const Coef& coef, double* err = nullptr) {
    const Eigen::Index n = eigenvalues.size();
    std::vector<Eigen::Index> rep(n);
    std::vector<Eigen::Index> uniq;
    for (Eigen::Index i = 0; i < n; ++i) {
        rep[i] = i;
        for (Eigen::Index j : uniq)
            if (std::abs(eigenvalues(i) - eigenvalues(j)) <= 1e-13 * std::max(1.0, std::abs(eigenvalues(j)))) {
                rep[i] = j;
                break;
            }
        if (rep[i] == i) uniq.push_back(i);
    }
    std::vector<QuadratureResult<cplx>> res(uniq.size());
    parallel_for(uniq.size(), [&](std::size_t k) { res[k] = coef(eigenvalues(uniq[k])); });
    Vec c(n);
    double e = 0.0;
    for (std::size_t k = 0; k < uniq.size(); ++k) {
        c(uniq[k]) = res[k].value;
        e = std::max(e, res[k].error_estimate);
    }
    for (Eigen::Index i = 0; i < n; ++i) c(i) = c(rep[i]);
    if (err) *err = e;
    return c;
}

// int_0^inf W^order phi(t) T(t) f dt (or with the deviation T(t) - t^alpha/Gamma(alpha+1)).
inline ModalResult modal_apply(const Kernel& phi, double order, const OperatorFamily& fam, const Vec& f,
                               ProfilePart part = ProfilePart::value, const ModalOptions& o = {}) {
    const auto& sd = fam.spectrum();
    if (f.size() != fam.generator().dimension()) throw ContractError("modal_apply: dimension mismatch");
    double err = 0.0;
    Vec c = modal_coefficients(sd.eigenvalues, [&](cplx e) { return modal_integral(phi, order, fam, e, part, o); }, &err);
    ModalResult r;
    r.value = sd.apply_diagonal(c, f);
    r.error_estimate = err * f.norm() * (sd.unitary ? 1.0 : sd.basis.norm() * sd.inverse_basis.norm());
    return r;
}

// ---- transforms and identity checks ----

// T(z) f = int_0^inf W^alpha(e^{-s^2/4z}/sqrt(pi z)) C_alpha(s) f ds.
inline Vec cosine_to_semigroup(const OperatorFamily& c_alpha, cplx z, const Vec& f, const ModalOptions& o = {}) {
    if (!c_alpha.is_cosine()) throw ContractError("cosine_to_semigroup: requires a cosine family");
    if (!(z.real() > 0)) throw DomainError("cosine_to_semigroup: requires Re z > 0");
    return modal_apply(Kernel::gaussian(z), c_alpha.alpha(), c_alpha, f, ProfilePart::value, o).value;
}

inline double relative_residual(const Vec& got, const Vec& want) {
    const double d = (got - want).norm();
    const double s = std::max(got.norm(), want.norm());
    return s == 0.0 ? 0.0 : d / s;
}

// Laplace-transform identity: (lambda - A)^{-1} f = lambda^alpha int e^{-lambda t} T_alpha(t) f dt
// (cosine kinds: (lambda^2 - A)^{-1} f = lambda^{alpha-1} int e^{-lambda t} C_alpha(t) f dt).
inline double verify_resolvent(const OperatorFamily& fam, cplx lambda, const Vec& f, const ModalOptions& o = {}) {
    if (!(lambda.real() > 0)) throw DomainError("verify_resolvent: requires Re lambda > 0");
    const Vec lap = modal_apply(Kernel::exp_eps(lambda), 0.0, fam, f, ProfilePart::value, o).value;
    if (fam.is_cosine()) {
        const Vec got = pow(lambda, cplx(fam.alpha() - 1.0)) * lap;
        return relative_residual(got, resolvent_solve(fam.generator(), lambda * lambda, f));
    }
    const Vec got = pow(lambda, cplx(fam.alpha())) * lap;
    return relative_residual(got, resolvent_solve(fam.generator(), lambda, f));
}

// T_alpha(t) f - t^alpha f / Gamma(alpha+1) = T_{alpha+1}(t) A f  (cosine kinds: C_{alpha+2}(t) A f).
inline double integra_identity_residual(const OperatorFamily& fam, const Vec& f, double t) {
    if (t == 0.0) return 0.0;
    const Vec lhs = fam.deviation(cplx(t), f);
    const OperatorFamily up = integrate_family(fam, fam.alpha() + (fam.is_cosine() ? 2.0 : 1.0));
    const Vec rhs = up(t, fam.generator().apply(f));
    return relative_residual(lhs, rhs);
}

// ---- growth ----

struct GrowthProfile {
    double nu = 0.0;
    double tau = 0.0;
    double constant = 0.0;
};

inline double operator_norm(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

inline std::vector<cplx> default_sector_grid() {
    std::vector<cplx> g;
    for (double r : {0.1, 0.3, 1.0, 3.0, 10.0})
        for (double th : {-3 * pi / 8, -pi / 4, -pi / 8, 0.0, pi / 8, pi / 4, 3 * pi / 8}) g.push_back(std::polar(r, th));
    return g;
}

// Nonnegative least-squares fit of log+||e^{zA}|| = c + tau Re z + nu log(|z|/Re z); decay below 1 carries no
// information for a bound that is nondecreasing in both regressors.
inline GrowthProfile measure_growth(const LinearOperator& A, const std::vector<cplx>& grid = default_sector_grid()) {
    if (grid.empty()) throw ContractError("measure_growth: empty grid");
    const OperatorFamily T = heat_semigroup(A);
    const Eigen::Index m = Eigen::Index(grid.size());
    Eigen::VectorXd y(m), x1(m), x2(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const cplx z = grid[std::size_t(i)];
        if (!(z.real() > 0)) throw DomainError("measure_growth: grid points must have Re z > 0");
        y(i) = std::max(std::log(std::max(operator_norm(T.matrix(z)), 1e-300)), 0.0);
        x1(i) = z.real();
        x2(i) = std::log(std::abs(z) / z.real());
    }
    GrowthProfile best;
    double best_res = INFINITY;
    for (int mask = 0; mask < 4; ++mask) {
        std::vector<const Eigen::VectorXd*> cols;
        if (mask & 1) cols.push_back(&x1);
        if (mask & 2) cols.push_back(&x2);
        Eigen::MatrixXd X(m, Eigen::Index(cols.size() + 1));
        X.col(0).setOnes();
        for (std::size_t j = 0; j < cols.size(); ++j) X.col(Eigen::Index(j + 1)) = *cols[j];
        Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
        double tau = 0, nu = 0;
        std::size_t j = 1;
        if (mask & 1) tau = beta(Eigen::Index(j++));
        if (mask & 2) nu = beta(Eigen::Index(j++));
        if (tau < 0 || nu < 0) continue;
        const double res = (X * beta - y).norm();
        if (res < best_res - 1e-12) {
            best_res = res;
            best.tau = tau;
            best.nu = nu;
        }
    }
    double c = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double ln = std::log(std::max(operator_norm(T.matrix(grid[std::size_t(i)])), 1e-300));
        c = std::max(c, std::exp(ln - best.tau * x1(i) - best.nu * x2(i)));
    }
    best.constant = c;
    return best;
}

struct TemperednessReport {
    std::vector<double> t;
    std::vector<double> values;  // t^{-alpha} ||T_alpha(t)||
    double max_value = 0.0;
    double median_value = 0.0;
    bool ok = false;
};

inline TemperednessReport temperedness(const OperatorFamily& fam, int samples = 25, double t_lo = 1e-3, double t_hi = 1e3) {
    if (samples < 2) throw ContractError("temperedness: need at least two samples");
    TemperednessReport r;
    for (int i = 0; i < samples; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, double(i) / (samples - 1));
        r.t.push_back(t);
        r.values.push_back(std::pow(t, -fam.alpha()) * operator_norm(fam.matrix(t)));
    }
    std::vector<double> s = r.values;
    std::sort(s.begin(), s.end());
    r.max_value = s.back();
    r.median_value = s[s.size() / 2];
    r.ok = std::isfinite(r.max_value) && r.max_value <= 10.0 * r.median_value;
    return r;
}

}  // namespace fracext
