#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace fracext {

// A point of the sector S_theta = {|arg z| < theta}; closed = true admits the boundary rays.
struct SectorPoint {
    cplx z;
    double half_angle = pi / 4;

    static SectorPoint make(cplx z, double half_angle = pi / 4, bool closed = false) {
        if (!(half_angle > 0 && half_angle <= pi / 2)) throw DomainError("SectorPoint: half angle must lie in (0, pi/2]");
        const double a = std::abs(arg(z));
        const bool ok = closed ? a <= half_angle + 1e-14 : a < half_angle;
        if (!ok || z == cplx(0)) {
            std::ostringstream os;
            os << "SectorPoint: z = " << z << " outside the sector |arg z| " << (closed ? "<=" : "<") << " "
               << half_angle;
            throw DomainError(os.str());
        }
        return {z, half_angle};
    }
};

namespace poly {

using Poly = std::vector<cplx>;  // coefficients in increasing degree

inline cplx eval(const Poly& p, cplx w) {
    cplx acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * w + *it;
    return acc;
}

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(double(i) * p[i]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

inline Poly add(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

inline Poly scale(Poly a, cplx c) {
    for (auto& x : a) x *= c;
    return a;
}

inline Poly shift_up(const Poly& a) {  // multiply by w
    Poly r(a.size() + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i + 1] = a[i];
    return r;
}

}  // namespace poly

// Falling factorial e (e-1) ... (e-k+1).
inline cplx falling(cplx e, int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= e - double(i);
    return r;
}

inline double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

// Time derivative of t^e R(w) e^{-w}, w = zeta/t:  d/dt [t^{-k} P(w) K] = t^{-k-1} [-kP - wP' + (e+w)P] K.
inline poly::Poly time_step(const poly::Poly& p, int k, cplx e) {
    using namespace poly;
    Poly r = scale(p, -double(k) + e);
    r = add(r, scale(shift_up(derivative(p)), -1.0));
    r = add(r, shift_up(p));
    return r;
}

// z-derivative of z^{-m} R(w) K with K ~ z^s e^{-w}, w = z^2/(4t):
//   d/dz [z^{-m} R K] = z^{-m-1} [-mR + 2wR' + (s - 2w)R] K.
inline poly::Poly z_step(const poly::Poly& r, int m, cplx s) {
    using namespace poly;
    Poly out = scale(r, -double(m) + s);
    out = add(out, scale(shift_up(derivative(r)), 2.0));
    out = add(out, scale(shift_up(r), -2.0));
    return out;
}

// Coefficients of d^n/dt^n of b or B:  d^n K = sum_j coeff_j (z^2/4)^j t^{-j-n} K.
struct DerivativeCoefficients {
    enum class Family { b, B };
    Family family;
    int order;
    std::vector<cplx> table;  // j = 0..n
};

// Built from the expansion of d^m e^{a/t} = p_m(a/t) t^{-m} e^{a/t},
//   p_{m+1}(x) = -x p_m'(x) - (m + x) p_m(x),  p_0 = 1,
// combined by Leibniz with d^k t^e = (e)_k t^{e-k} (falling factorial).
inline DerivativeCoefficients derivative_coefficients(DerivativeCoefficients::Family fam, cplx sigma, int n) {
    if (n < 0) throw ContractError("derivative_coefficients: negative order");
    if (n > 12) throw ContractError("derivative_coefficients: order above 12 (overflow guard)");
    using namespace poly;
    const cplx e = fam == DerivativeCoefficients::Family::b ? -1.0 - sigma : sigma - 1.0;
    std::vector<Poly> p{{1.0}};
    for (int m = 0; m < n; ++m) {
        const Poly& pm = p.back();
        Poly next = scale(shift_up(derivative(pm)), -1.0);
        next = add(next, scale(pm, -double(m)));
        next = add(next, scale(shift_up(pm), -1.0));
        p.push_back(next);
    }
    std::vector<cplx> table(n + 1, 0.0);
    for (int m = 0; m <= n; ++m) {
        const cplx c = binomial(n, m) * falling(e, n - m);
        for (std::size_t j = 0; j < p[m].size(); ++j) {
            // x = a/t = -w: x^j = (-1)^j w^j
            table[j] += c * p[m][j] * ((j % 2 == 0) ? 1.0 : -1.0);
        }
    }
    return {fam, n, table};
}

namespace detail {

// K(t) = coef * t^e * R(w) * [e^{-w} or (e^{-w} - 1)] * e^{-eps t},  w = zeta / t.
struct ExpPowerSpec {
    cplx coef = 1.0;
    cplx e = 0.0;
    cplx zeta = 0.0;
    cplx eps = 0.0;
    bool subtract_one = false;
    poly::Poly R{1.0};
};

inline cplx exppower_base_derivative(const ExpPowerSpec& s, const poly::Poly& Pk, int k, cplx t) {
    const cplx w = s.zeta / t;
    const cplx lt = std::log(t);
    if (!s.subtract_one) {
        const cplx ex = std::exp(-w + (s.e - double(k)) * lt);
        if (ex == cplx(0)) return 0.0;
        return s.coef * ex * poly::eval(Pk, w);
    }
    const cplx tp = std::exp((s.e - double(k)) * lt);
    const cplx p0 = Pk[0];
    poly::Poly dp(Pk.begin() + 1, Pk.end());  // (P(w) - P(0)) / w
    cplx rest = 0.0;
    if (!dp.empty()) {
        const cplx ew = std::exp(-w);
        if (ew != cplx(0)) rest = w * poly::eval(dp, w) * ew;
    }
    return s.coef * tp * (rest + p0 * expm1(-w));
}

inline cplx exppower_derivative(const ExpPowerSpec& s, int n, cplx t) {
    std::vector<poly::Poly> P{s.R};
    for (int k = 0; k < n; ++k) P.push_back(time_step(P.back(), k, s.e));
    if (s.eps == cplx(0)) return exppower_base_derivative(s, P[n], n, t);
    cplx acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        const cplx c = binomial(n, k) * std::pow(-s.eps, double(n - k));
        acc += c * exppower_base_derivative(s, P[k], k, t);
    }
    return acc * std::exp(-s.eps * t);
}

// Terms c * t^j * q^{-(mu+k)}, q = z^2 + t^2.
struct QTerm {
    int j;
    int k;
    cplx c;
};

inline std::vector<QTerm> qterms_derivative(const std::vector<QTerm>& in, cplx mu) {
    std::vector<QTerm> out;
    for (const auto& t : in) {
        if (t.j > 0) out.push_back({t.j - 1, t.k, double(t.j) * t.c});
        out.push_back({t.j + 1, t.k + 1, -2.0 * (mu + double(t.k)) * t.c});
    }
    return out;
}

inline cplx qterms_eval(const std::vector<QTerm>& terms, cplx mu, cplx z2, cplx t, Branch br) {
    const cplx lq = log(z2 + t * t, br);
    cplx acc = 0.0;
    for (const auto& x : terms) acc += x.c * std::pow(t, x.j) * std::exp(-(mu + double(x.k)) * lq);
    return acc;
}

// Binomial coefficient C(a, k) for complex a.
inline cplx binom_c(cplx a, int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= (a - double(i)) / double(i + 1);
    return r;
}

// n-th derivative of t^{-2 mu} (1 + z^2/t^2)^{-mu} (minus its k=0 term if skip0) by the
// large-t binomial series; valid for |z/t| small.
inline cplx qpower_series(cplx mu, cplx z2, cplx t, int n, bool skip0) {
    const cplx u = z2 / (t * t);
    cplx acc = 0.0, uk = 1.0;
    for (int k = 0; k < 200; ++k) {
        if (!(skip0 && k == 0)) {
            const cplx term = binom_c(-mu, k) * uk * falling(-2.0 * mu - 2.0 * double(k), n);
            acc += term;
            if (k > 2 && std::abs(term) < 1e-18 * std::abs(acc)) break;
        }
        uk *= u;
    }
    return acc * std::exp((-2.0 * mu - double(n)) * std::log(t));
}

// z^{2 sigma} (z^2 + t^2)^{-(sigma + 1/2)}
struct PoissonCosineSpec {
    cplx sigma, z;
    Branch branch;
};
// (z^2 + t^2)^{sigma - 1/2} - t^{2 sigma - 1}
struct CosineFractionalSpec {
    cplx sigma, z;
    Branch branch;
};
// Log(t^2 / (z^2 + t^2))
struct CosineLogSpec {
    cplx z;
};
// e^{-s^2/(4z)} / sqrt(pi z)
struct GaussianSpec {
    cplx z;
};

}  // namespace detail

// Asymptotic description of d^n/dt^n K (or W^alpha K) along a ray, in |t|.
struct KernelShape {
    std::optional<double> essential_scale;  // ~ e^{-c/t} near 0
    double zero_exponent = 0.0;              // ~ t^q near 0 (ignored when essential)
    double tail_power = INFINITY;            // ~ t^{-p} at infinity (INFINITY: faster than algebraic)
    std::optional<cplx> eps;                 // e^{-eps t} factor
    double tail_power_before_eps = INFINITY; // algebraic tail of the undamped kernel (eps kernels only)
    std::vector<double> scales;              // characteristic scales
};

class Kernel {
public:
    enum class Kind {
        b,
        B,
        B_minus_h,
        h,
        exp_eps,
        product,        // one of the above times e_eps
        b_z,            // d/dz b
        B_z,            // d/dz B
        poisson_cosine,
        cosine_fractional,
        cosine_log,
        gaussian,
        convolution,
    };

    static Kernel b(const FracOrder& sigma, cplx z) {
        const cplx s = sigma.value();
        detail::ExpPowerSpec sp;
        sp.coef = pow(z, 2.0 * s) * std::exp(-s * std::log(4.0)) * rgamma(s);
        sp.e = -1.0 - s;
        sp.zeta = z * z / 4.0;
        return Kernel(Kind::b, sp, s, z);
    }
    static Kernel B(const FracOrder& sigma, cplx z) {
        const cplx s = sigma.value();
        detail::ExpPowerSpec sp;
        sp.coef = rgamma(s);
        sp.e = s - 1.0;
        sp.zeta = z * z / 4.0;
        return Kernel(Kind::B, sp, s, z);
    }
    static Kernel B_minus_h(const FracOrder& sigma, cplx z) {
        Kernel k = B(sigma, z);
        k.kind_ = Kind::B_minus_h;
        std::get<detail::ExpPowerSpec>(k.spec_).subtract_one = true;
        return k;
    }
    // h^tau(t) = t^{tau-1} / Gamma(tau), Re tau > 0.
    static Kernel h(cplx tau) {
        if (!(tau.real() > 0)) throw DomainError("h kernel: requires Re tau > 0");
        detail::ExpPowerSpec sp;
        sp.coef = rgamma(tau);
        sp.e = tau - 1.0;
        Kernel k(Kind::h, sp, tau, std::nullopt);
        return k;
    }
    static Kernel exp_eps(cplx eps) {
        if (!(eps.real() > 0)) throw DomainError("e_eps kernel: requires Re eps > 0");
        detail::ExpPowerSpec sp;
        sp.eps = eps;
        return Kernel(Kind::exp_eps, sp, std::nullopt, std::nullopt);
    }
    // kernel * e_eps
    static Kernel times_exp(const Kernel& base, cplx eps) {
        if (!(eps.real() > 0)) throw DomainError("e_eps kernel: requires Re eps > 0");
        const auto* sp = std::get_if<detail::ExpPowerSpec>(&base.spec_);
        if (!sp) throw ContractError("times_exp: only exponential-power kernels can be multiplied by e_eps");
        detail::ExpPowerSpec s2 = *sp;
        s2.eps += eps;
        Kernel k(Kind::product, s2, base.sigma_, base.z_);
        k.base_kind_ = base.kind_ == Kind::product ? base.base_kind_ : base.kind_;
        return k;
    }
    // d^m/dz^m of b or B as a kernel in t.
    static Kernel z_derivative_kernel(const Kernel& base, int m) {
        if (base.kind_ != Kind::b && base.kind_ != Kind::B)
            throw ContractError("z_derivative_kernel: defined for b and B");
        if (m < 1 || m > 12) throw ContractError("z_derivative_kernel: order must be in 1..12");
        detail::ExpPowerSpec sp = std::get<detail::ExpPowerSpec>(base.spec_);
        const cplx s = base.kind_ == Kind::b ? 2.0 * *base.sigma_ : 0.0;
        poly::Poly r{1.0};
        for (int i = 0; i < m; ++i) r = z_step(r, i, s);
        sp.R = r;
        sp.coef *= std::pow(*base.z_, -double(m));
        return Kernel(base.kind_ == Kind::b ? Kind::b_z : Kind::B_z, sp, base.sigma_, base.z_);
    }
    static Kernel poisson_cosine(const FracOrder& sigma, cplx z, Branch br = Branch::principal) {
        return Kernel(Kind::poisson_cosine, detail::PoissonCosineSpec{sigma.value(), z, br}, sigma.value(), z);
    }
    static Kernel cosine_fractional(const FracOrder& sigma, cplx z, Branch br = Branch::principal) {
        if (sigma.is_half()) throw DomainError("cosine_fractional kernel: sigma = 1/2 uses the logarithm kernel");
        return Kernel(Kind::cosine_fractional, detail::CosineFractionalSpec{sigma.value(), z, br}, sigma.value(), z);
    }
    static Kernel cosine_log(cplx z) { return Kernel(Kind::cosine_log, detail::CosineLogSpec{z}, 0.5, z); }
    static Kernel gaussian(cplx z) {
        if (!(z.real() > 0)) throw DomainError("gaussian kernel: requires Re z > 0");
        return Kernel(Kind::gaussian, detail::GaussianSpec{z}, std::nullopt, z);
    }
    // (phi * psi)(t) with phi flat at 0 (derivatives are applied to phi).
    static Kernel convolution(const Kernel& phi, const Kernel& psi) {
        if (!phi.flat_at_zero()) throw ContractError("convolution kernel: the first factor must vanish to all orders at 0");
        Kernel k(Kind::convolution, ConvSpec{std::make_shared<Kernel>(phi), std::make_shared<Kernel>(psi)},
                 std::nullopt, std::nullopt);
        return k;
    }

    Kind kind() const { return kind_; }
    std::optional<cplx> sigma() const { return sigma_; }
    std::optional<cplx> z() const { return z_; }
    bool is_exp_power() const { return std::holds_alternative<detail::ExpPowerSpec>(spec_); }
    const detail::ExpPowerSpec* exp_power() const { return std::get_if<detail::ExpPowerSpec>(&spec_); }

    std::string name() const {
        switch (kind_) {
            case Kind::b: return "b";
            case Kind::B: return "B";
            case Kind::B_minus_h: return "B-h";
            case Kind::h: return "h";
            case Kind::exp_eps: return "e_eps";
            case Kind::product: return "product";
            case Kind::b_z: return "d_z b";
            case Kind::B_z: return "d_z B";
            case Kind::poisson_cosine: return "poisson_cosine";
            case Kind::cosine_fractional: return "cosine_fractional";
            case Kind::cosine_log: return "cosine_log";
            case Kind::gaussian: return "gaussian";
            case Kind::convolution: return "convolution";
        }
        return "?";
    }

    // True when the kernel and all its derivatives vanish at t = 0+.
    bool flat_at_zero() const {
        if (const auto* sp = exp_power()) return sp->zeta != cplx(0) && !sp->subtract_one && sp->zeta.real() > 0;
        return false;
    }

    // Value at t = 0+ (finite kernels only).
    cplx at_zero() const {
        if (flat_at_zero()) return 0.0;
        if (const auto* sp = exp_power()) {
            if (sp->zeta == cplx(0)) {
                if (sp->e == cplx(0)) return sp->coef * poly::eval(sp->R, 0.0);
                if (sp->e.real() > 0) return 0.0;
            }
        }
        if (kind_ == Kind::gaussian) return value(cplx(0));
        throw DomainError("kernel " + name() + " has no finite value at t = 0");
    }

    cplx value(cplx t) const { return derivative(0, t); }

    // n-th derivative in t at complex t (t = 0 only for the Gaussian).
    cplx derivative(int n, cplx t) const {
        if (n < 0) throw ContractError("kernel derivative: negative order");
        if (n > 12) throw ContractError("kernel derivative: order above 12 (overflow guard)");
        if (kind_ != Kind::gaussian && t.imag() == 0.0 && t.real() < 0.0)
            throw DomainError("kernel: negative real argument");
        return std::visit([&](const auto& sp) { return eval_spec(sp, n, t); }, spec_);
    }

    // Admissible directions for rotating t onto a ray (analyticity and decay).
    AngleWindow window() const {
        AngleWindow w{-pi / 2, pi / 2};
        if (const auto* sp = exp_power()) {
            if (sp->zeta != cplx(0)) {
                const double a = arg(sp->zeta);
                w = w.intersect({a - pi / 2, a + pi / 2});
            }
            if (sp->eps != cplx(0)) {
                const double a = arg(sp->eps);
                w = w.intersect({-pi / 2 - a, pi / 2 - a});
            }
            return w;
        }
        if (kind_ == Kind::poisson_cosine || kind_ == Kind::cosine_fractional || kind_ == Kind::cosine_log) {
            const double phi = arg(*z_);
            return w.intersect({phi - pi / 2, phi + pi / 2});
        }
        if (kind_ == Kind::gaussian) {
            const double phi = arg(*z_);
            return w.intersect({(phi - pi / 2) / 2, (phi + pi / 2) / 2});
        }
        // convolution: evaluated along [0, t]; both factors must be analytic there
        const auto& cs = std::get<ConvSpec>(spec_);
        return cs.phi->window().intersect(cs.psi->window());
    }

    // Asymptotics of W^alpha K (derivative-first form) along rays.
    KernelShape shape(double alpha) const {
        KernelShape s;
        if (const auto* sp = exp_power()) {
            if (sp->zeta != cplx(0)) s.scales.push_back(std::abs(sp->zeta));
            if (sp->eps != cplx(0)) {
                s.eps = sp->eps;
                s.scales.push_back(1.0 / std::abs(sp->eps));
            }
            const double re = sp->e.real();
            if (sp->zeta != cplx(0) && !sp->subtract_one) {
                s.essential_scale = std::abs(sp->zeta);
                s.tail_power = -re + alpha;
                // polynomial prefactor R(w) ~ w^0 at infinity only if R(0) != 0
                if (!sp->R.empty() && sp->R[0] == cplx(0)) s.tail_power += 1.0;
            } else if (sp->subtract_one) {
                s.zero_exponent = re - alpha;
                s.tail_power = 1.0 - re + alpha;
            } else {
                const bool poly_power = sp->e.imag() == 0.0 && re >= 0.0 && re == std::floor(re);
                s.zero_exponent = poly_power ? (alpha == 0.0 ? re : 0.0) : re - alpha;
                s.tail_power = -re + alpha;
            }
            if (sp->eps != cplx(0)) {
                if (sp->e != cplx(0) || sp->zeta != cplx(0) || sp->subtract_one) s.tail_power_before_eps = s.tail_power;
                s.tail_power = INFINITY;
            }
            return s;
        }
        const double sr = sigma_ ? sigma_->real() : 0.5;
        switch (kind_) {
            case Kind::poisson_cosine:
                s.scales.push_back(std::abs(*z_));
                s.tail_power = 2 * sr + 1 + alpha;
                break;
            case Kind::cosine_fractional:
                s.scales.push_back(std::abs(*z_));
                s.tail_power = 3 - 2 * sr + alpha;
                s.zero_exponent = std::min(0.0, 2 * sr - 1) - alpha;
                break;
            case Kind::cosine_log:
                s.scales.push_back(std::abs(*z_));
                s.tail_power = 2 + alpha;
                s.zero_exponent = alpha > 0 ? -alpha : -0.25;  // log singularity
                break;
            case Kind::gaussian:
                s.scales.push_back(2.0 * std::sqrt(std::abs(*z_)));
                s.tail_power = INFINITY;
                break;
            case Kind::convolution: {
                const auto& cs = std::get<ConvSpec>(spec_);
                KernelShape a = cs.phi->shape(alpha), b = cs.psi->shape(0.0);
                s.scales = a.scales;
                s.scales.insert(s.scales.end(), b.scales.begin(), b.scales.end());
                s.essential_scale = a.essential_scale;
                s.tail_power = std::min(a.tail_power, b.tail_power);
                if (a.eps && b.eps) s.eps = std::abs(*a.eps) < std::abs(*b.eps) ? *a.eps : *b.eps;
                if (!(a.eps && b.eps)) s.eps.reset();
                break;
            }
            default: break;
        }
        return s;
    }

private:
    struct ConvSpec {
        std::shared_ptr<const Kernel> phi, psi;
    };
    using Spec = std::variant<detail::ExpPowerSpec, detail::PoissonCosineSpec, detail::CosineFractionalSpec,
                              detail::CosineLogSpec, detail::GaussianSpec, ConvSpec>;

    Kernel(Kind k, Spec sp, std::optional<cplx> sigma, std::optional<cplx> z)
        : kind_(k), spec_(std::move(sp)), sigma_(sigma), z_(z) {}

    static void require_nonzero(cplx t) {
        if (t == cplx(0)) throw DomainError("kernel evaluation at t = 0");
    }

    static cplx eval_spec(const detail::ExpPowerSpec& sp, int n, cplx t) {
        require_nonzero(t);
        return detail::exppower_derivative(sp, n, t);
    }

    static cplx eval_spec(const detail::PoissonCosineSpec& sp, int n, cplx t) {
        const cplx z2 = sp.z * sp.z, mu = sp.sigma + 0.5;
        const cplx pre = pow(sp.z, 2.0 * sp.sigma);
        if (sp.branch == Branch::principal && t != cplx(0) && std::abs(sp.z) < 0.25 * std::abs(t))
            return pre * detail::qpower_series(mu, z2, t, n, false);
        std::vector<detail::QTerm> terms{{0, 0, 1.0}};
        for (int i = 0; i < n; ++i) terms = detail::qterms_derivative(terms, mu);
        return pre * detail::qterms_eval(terms, mu, z2, t, sp.branch);
    }

    static cplx eval_spec(const detail::CosineFractionalSpec& sp, int n, cplx t) {
        require_nonzero(t);
        const cplx z2 = sp.z * sp.z, mu = 0.5 - sp.sigma;
        if (sp.branch == Branch::principal && std::abs(sp.z) < 0.25 * std::abs(t))
            return detail::qpower_series(mu, z2, t, n, true);
        std::vector<detail::QTerm> terms{{0, 0, 1.0}};
        for (int i = 0; i < n; ++i) terms = detail::qterms_derivative(terms, mu);
        const cplx e = 2.0 * sp.sigma - 1.0;
        return detail::qterms_eval(terms, mu, z2, t, sp.branch) - falling(e, n) * std::exp((e - double(n)) * std::log(t));
    }

    static cplx eval_spec(const detail::CosineLogSpec& sp, int n, cplx t) {
        require_nonzero(t);
        const cplx z2 = sp.z * sp.z;
        if (std::abs(sp.z) < 0.25 * std::abs(t)) {
            // -log(1+u) = sum_{k>=1} (-1)^k u^k / k, u = z^2/t^2
            cplx acc = 0.0, zk = 1.0;
            for (int k = 1; k < 200; ++k) {
                zk *= z2;
                const cplx term = ((k % 2 == 0) ? 1.0 : -1.0) / double(k) * zk * falling(-2.0 * k, n) *
                                  std::pow(t, -2.0 * k - n);
                acc += term;
                if (k > 2 && std::abs(term) < 1e-18 * std::abs(acc)) break;
            }
            return acc;
        }
        if (n == 0) return -log1p(z2 / (t * t));
        // 2 (-1)^{n-1} (n-1)! t^{-n} - d^{n-1} (2 t q^{-1})
        double fact = 1.0;
        for (int i = 2; i < n; ++i) fact *= i;
        const cplx first = 2.0 * ((n % 2 == 1) ? 1.0 : -1.0) * fact * std::pow(t, -double(n));
        std::vector<detail::QTerm> terms{{1, 0, 2.0}};
        for (int i = 0; i < n - 1; ++i) terms = detail::qterms_derivative(terms, 1.0);
        return first - detail::qterms_eval(terms, 1.0, z2, t, Branch::principal);
    }

    static cplx eval_spec(const detail::GaussianSpec& sp, int n, cplx s) {
        // G^{(n)} = P_n(s) G,  P_{n+1} = P_n' - (s / 2z) P_n
        poly::Poly p{1.0};
        const cplx c = -1.0 / (2.0 * sp.z);
        for (int i = 0; i < n; ++i) p = poly::add(poly::derivative(p), poly::scale(poly::shift_up(p), c));
        return poly::eval(p, s) * std::exp(-s * s / (4.0 * sp.z)) / std::sqrt(pi * sp.z);
    }

    static cplx eval_spec(const ConvSpec& cs, int n, cplx t);

    Kind kind_;
    Kind base_kind_ = Kind::exp_eps;
    Spec spec_;
    std::optional<cplx> sigma_;
    std::optional<cplx> z_;
};

// ---- public evaluation surface ----

inline cplx eval(const Kernel& k, double t) {
    if (!(t > 0)) throw DomainError("kernel eval: requires t > 0");
    return k.value(t);
}

inline cplx time_derivative(const Kernel& k, int n, double t) {
    if (!(t > 0)) throw DomainError("time_derivative: requires t > 0");
    if (n > 12) throw ContractError("time_derivative: order above 12 (overflow guard)");
    if (k.kind() == Kernel::Kind::b || k.kind() == Kernel::Kind::B) {
        const auto fam = k.kind() == Kernel::Kind::b ? DerivativeCoefficients::Family::b : DerivativeCoefficients::Family::B;
        const auto dc = derivative_coefficients(fam, *k.sigma(), n);
        const cplx w = (*k.z()) * (*k.z()) / (4.0 * t);
        return poly::eval(dc.table, w) * std::pow(t, -double(n)) * k.value(t);
    }
    return k.derivative(n, t);
}

inline cplx z_derivative(const Kernel& k, int n, double t) {
    if (!(t > 0)) throw DomainError("z_derivative: requires t > 0");
    return Kernel::z_derivative_kernel(k, n).value(t);
}

// ---- Weyl calculus ----

struct WeylOptions {
    QuadOptions quad{1e-12, 0.0, 3, 10};
};

// Ray direction used for integrals starting at s: arg s when admissible, else the window midpoint.
inline double weyl_direction(const AngleWindow& w, cplx s) {
    const double a = s == cplx(0) ? 0.0 : arg(s);
    if (w.contains(a)) return a;
    if (w.empty()) throw DomainError("Weyl integral: kernel admits no decaying direction");
    return w.mid();
}

// W^{-beta} psi(s) = (1/Gamma(beta)) int_s^inf (t - s)^{beta-1} psi(t) dt along direction theta.
// psi: cplx -> cplx. Hints describe psi(s + r e^{i theta}) in r apart from the (r)^{beta-1} factor.
template <class F>
QuadratureResult<cplx> weyl_integral_ray(const F& psi, double beta, cplx s, double theta,
                                         std::vector<DecayHint> hints, const QuadOptions& opt = {}) {
    if (!(beta > 0)) throw ContractError("weyl_integral: requires beta > 0");
    const cplx dir = std::polar(1.0, theta);
    if (beta != 1.0) hints.push_back(DecayHint::algebraic_at_zero(beta - 1.0));
    const cplx pre = std::exp(cplx(0, theta * beta)) * rgamma(beta);
    auto g = [&](double r) -> cplx { return psi(s + r * dir) * std::pow(r, beta - 1.0); };
    auto res = integrate_halfline(g, std::span<const DecayHint>(hints), opt);
    res.value *= pre;
    res.error_estimate *= std::abs(pre);
    return res;
}

namespace detail {

inline std::vector<DecayHint> kernel_ray_hints(const KernelShape& sh, double theta, cplx s, double beta) {
    std::vector<DecayHint> h;
    for (double sc : sh.scales) h.push_back(DecayHint::scale(sc));
    if (std::abs(s) > 0) h.push_back(DecayHint::scale(std::abs(s)));
    if (sh.eps) {
        const double rate = (*sh.eps * std::polar(1.0, theta)).real();
        if (rate > 0) h.push_back(DecayHint::exponential(rate));
    }
    if (std::isfinite(sh.tail_power)) {
        const double p = sh.tail_power - (beta - 1.0);
        if (!(p > 1)) throw DomainError("Weyl integral diverges: kernel tail too slow for this order");
        h.push_back(DecayHint::algebraic(p));
    } else if (!sh.eps && sh.scales.empty() == false) {
        h.push_back(DecayHint::exponential(1.0 / sh.scales.front()));
    }
    return h;
}

}  // namespace detail

inline QuadratureResult<cplx> weyl_integral(const Kernel& k, double beta, cplx s, const WeylOptions& o = {}) {
    if (s == cplx(0) && !k.flat_at_zero()) {
        const auto sh = k.shape(0.0);
        if (!sh.essential_scale && sh.zero_exponent + beta - 1.0 <= -1.0)
            throw DomainError("weyl_integral at s = 0 diverges: kernel too singular at the origin");
    }
    const double th = weyl_direction(k.window(), s);
    const auto sh = k.shape(0.0);
    auto hints = detail::kernel_ray_hints(sh, th, s, beta);
    if (s == cplx(0) && !sh.essential_scale && sh.zero_exponent != 0.0)
        hints.push_back(DecayHint::algebraic_at_zero(sh.zero_exponent + beta - 1.0));
    if (s == cplx(0) && sh.essential_scale) hints.push_back(DecayHint::essential_at_zero(*sh.essential_scale));
    auto psi = [&](cplx t) { return k.value(t); };
    if (s == cplx(0)) {
        // (t)^{beta-1} psi(t) jointly graded at 0
        const cplx dir = std::polar(1.0, th);
        const cplx pre = std::exp(cplx(0, th * beta)) * rgamma(beta);
        std::vector<DecayHint> h2;
        for (const auto& x : hints)
            if (x.kind != DecayHint::Kind::algebraic_singularity_at_zero) h2.push_back(x);
        if (!sh.essential_scale) {
            const double q = sh.zero_exponent + beta - 1.0;
            if (q != 0.0) h2.push_back(DecayHint::algebraic_at_zero(q));
        }
        auto g = [&](double r) -> cplx { return psi(r * dir) * std::pow(r, beta - 1.0); };
        auto res = integrate_halfline(g, std::span<const DecayHint>(h2), o.quad);
        res.value *= pre;
        res.error_estimate *= std::abs(pre);
        return res;
    }
    return weyl_integral_ray(psi, beta, s, th, hints, o.quad);
}

// Weyl integral of a callable phi (complex argument) with caller-supplied hints for phi(s + r).
template <class F>
QuadratureResult<cplx> weyl_integral(const F& phi, double beta, double s, std::vector<DecayHint> hints,
                                     const QuadOptions& opt = {1e-12}) {
    return weyl_integral_ray([&](cplx t) { return cplx(phi(t)); }, beta, cplx(s), 0.0, std::move(hints), opt);
}

// W^alpha K(s): integer alpha exactly, fractional alpha by W^{-(n-alpha)} of (-1)^n K^{(n)}.
inline QuadratureResult<cplx> weyl_derivative(const Kernel& k, double alpha, cplx s, const WeylOptions& o = {}) {
    if (alpha < 0) throw ContractError("weyl_derivative: alpha must be nonnegative (use weyl_integral)");
    const int n = int(std::floor(alpha)) + (alpha == std::floor(alpha) ? 0 : 1);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    if (alpha == std::floor(alpha)) {
        if (s == cplx(0)) throw DomainError("weyl_derivative: s must be nonzero");
        return {sign * k.derivative(n, s), 0.0, 1};
    }
    if (s == cplx(0)) throw DomainError("weyl_derivative: s must be nonzero");
    const double beta = double(n) - alpha;
    const double th = weyl_direction(k.window(), s);
    const auto sh = k.shape(double(n));
    auto hints = detail::kernel_ray_hints(sh, th, s, beta);
    auto psi = [&](cplx t) { return sign * k.derivative(n, t); };
    return weyl_integral_ray(psi, beta, s, th, hints, o.quad);
}

// W^alpha of a callable on the real half-line: Marchaud form for the fractional part,
// fourth-order central differences for the integer part.
template <class F>
cplx weyl_derivative(const F& phi, double alpha, double s, std::vector<DecayHint> tail_hints,
                     const QuadOptions& opt = {1e-11}) {
    if (alpha < 0) throw ContractError("weyl_derivative: alpha must be nonnegative");
    const int m = int(std::floor(alpha));
    const double frac = alpha - m;
    auto fracpart = [&](double x) -> cplx {
        if (frac == 0.0) return cplx(phi(x));
        // (frac / Gamma(1-frac)) int_0^inf (phi(x) - phi(x+r)) r^{-1-frac} dr
        const cplx fx = phi(x);
        std::vector<DecayHint> h{DecayHint::algebraic_at_zero(-frac), DecayHint::algebraic(1.0 + frac),
                                 DecayHint::scale(1.0)};
        auto g = [&](double r) -> cplx { return (fx - cplx(phi(x + r))) * std::pow(r, -1.0 - frac); };
        auto res = integrate_halfline(g, std::span<const DecayHint>(h), opt);
        return frac * rgamma(1.0 - frac) * res.value;
    };
    (void)tail_hints;
    if (m == 0) return fracpart(s);
    // (-1)^m d^m/ds^m by fourth-order central differences of the fractional part
    const double hstep = 1e-2 * std::max(1.0, std::abs(s));
    auto d1 = [&](auto&& f, double x) -> cplx {
        return (-f(x + 2 * hstep) + 8.0 * f(x + hstep) - 8.0 * f(x - hstep) + f(x - 2 * hstep)) / (12.0 * hstep);
    };
    if (m == 1) return -d1(fracpart, s);
    if (m == 2) {
        auto f1 = [&](double x) { return d1(fracpart, x); };
        return d1(f1, s);
    }
    throw ContractError("weyl_derivative: callable path supports alpha < 3");
}

// W^alpha of a callable analytic near [s, inf) (complex argument), derivative-first: the n-th derivative
// comes from the Cauchy integral on a circle of the given radius (trapezoidal rule, spectrally accurate),
// then W^{-(n-alpha)} is applied along the real axis. Hints describe psi(s + r).
template <class F>
QuadratureResult<cplx> weyl_derivative_analytic(const F& psi, double alpha, double s, std::vector<DecayHint> hints,
                                                double radius = 0.25, int points = 32, const QuadOptions& opt = {1e-12}) {
    if (alpha < 0) throw ContractError("weyl_derivative_analytic: alpha must be nonnegative");
    if (!(radius > 0) || points < 8) throw ContractError("weyl_derivative_analytic: need radius > 0 and >= 8 points");
    const int n = int(std::ceil(alpha));
    auto dn = [&](cplx t) -> cplx {
        if (n == 0) return psi(t);
        cplx acc = 0.0;
        for (int k = 0; k < points; ++k) {
            const cplx w = std::polar(1.0, 2.0 * pi * k / points);
            acc += psi(t + radius * w) * std::pow(w, -double(n));
        }
        double fact = 1.0;
        for (int i = 2; i <= n; ++i) fact *= i;
        return acc * fact / (double(points) * std::pow(radius, double(n)));
    };
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    if (double(n) == alpha) return {sign * dn(s), 0.0, std::size_t(points)};
    return weyl_integral_ray([&](cplx t) { return sign * dn(t); }, double(n) - alpha, cplx(s), 0.0, std::move(hints), opt);
}

// ---- convolution on the half-line ----

struct ConvolutionOptions {
    QuadOptions quad{1e-12, 0.0, 3, 10};
};

// (phi * psi)(s) = s int_0^1 phi(s(1-v)) psi(s v) dv, with the factors' zero singularities graded.
template <class F, class G>
QuadratureResult<cplx> convolve_halfline(const F& phi, double q_phi, const G& psi, double q_psi, cplx s,
                                         const QuadOptions& opt = {1e-12}) {
    if (s == cplx(0)) return {0.0, 0.0, 1};
    // split at v = 1/2 and reflect the right half so both endpoint singularities sit at an exact 0
    auto g1 = [&](double v) -> cplx { return v <= 0.0 ? cplx(0) : phi(s * (1.0 - v)) * psi(s * v); };
    auto g2 = [&](double u) -> cplx { return u <= 0.0 ? cplx(0) : phi(s * u) * psi(s * (1.0 - u)); };
    auto r1 = integrate_interval(g1, 0.0, 0.5, opt, EndpointHints{q_psi, 0.0});
    auto r2 = integrate_interval(g2, 0.0, 0.5, opt, EndpointHints{q_phi, 0.0});
    return {s * (r1.value + r2.value), std::abs(s) * (r1.error_estimate + r2.error_estimate),
            r1.evaluations + r2.evaluations};
}

inline double zero_exponent_for_grading(const Kernel& k, double alpha) {
    const auto sh = k.shape(alpha);
    if (sh.essential_scale) return 0.0;
    return std::max(sh.zero_exponent, -0.999);
}

inline QuadratureResult<cplx> convolve_halfline(const Kernel& phi, const Kernel& psi, cplx s,
                                                const ConvolutionOptions& o = {}) {
    const double qa = zero_exponent_for_grading(phi, 0.0), qb = zero_exponent_for_grading(psi, 0.0);
    if (qa + qb + 1.0 <= 0.0 && qa < 0 && qb < 0) {
        // both singular: still integrable as long as each exponent exceeds -1
    }
    return convolve_halfline([&](cplx t) { return phi.value(t); }, qa, [&](cplx t) { return psi.value(t); }, qb, s,
                             o.quad);
}

inline cplx Kernel::eval_spec(const ConvSpec& cs, int n, cplx t) {
    require_nonzero(t);
    const double qb = zero_exponent_for_grading(*cs.psi, 0.0);
    auto r = convolve_halfline([&](cplx u) { return cs.phi->derivative(n, u); }, 0.0,
                               [&](cplx u) { return cs.psi->value(u); }, qb, t, QuadOptions{1e-12, 0.0, 3, 10});
    return r.value;
}

// ---- Sobolev algebra norm ----

// ||phi||_(alpha) = (1/Gamma(alpha+1)) int_0^inf |W^alpha phi(t)| t^alpha dt  (real axis).
namespace detail {

// Sign changes of a real-valued g on a logarithmic grid over [lo, hi], refined by bisection.
template <class F>
std::vector<double> sign_changes(const F& g, double lo, double hi, int n = 160) {
    std::vector<double> roots;
    const double step = std::log(hi / lo) / n;
    double t0 = lo, g0 = g(lo);
    for (int i = 1; i <= n; ++i) {
        const double t1 = lo * std::exp(step * i), g1 = g(t1);
        if (g0 != 0.0 && g1 != 0.0 && (g0 < 0) != (g1 < 0)) {
            double a = t0, b = t1, ga = g0;
            for (int it = 0; it < 60 && b - a > 1e-15 * b; ++it) {
                const double m = 0.5 * (a + b), gm = g(m);
                if ((gm < 0) == (ga < 0)) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        t0 = t1;
        g0 = g1;
    }
    return roots;
}

}  // namespace detail

// ||phi||_(alpha) = int |W^alpha phi(t)| t^alpha dt / Gamma(alpha + 1) for a caller-supplied W^alpha phi.
// When W^alpha phi is real its sign changes are located and used as exact breakpoints (|.| has kinks there).
inline QuadratureResult<double> sobolev_norm(const std::function<cplx(double)>& weyl_phi, double alpha,
                                             std::vector<DecayHint> hints, const QuadOptions& opt = {1e-9}) {
    if (alpha < 0) throw ContractError("sobolev_norm: alpha must be nonnegative");
    double lo = INFINITY, hi = 0.0;
    for (const auto& h : hints)
        if (h.kind == DecayHint::Kind::breakpoint || h.kind == DecayHint::Kind::essential_singularity_at_zero ||
            h.kind == DecayHint::Kind::exponential_at_infinity) {
            const double sc = h.kind == DecayHint::Kind::exponential_at_infinity ? 1.0 / h.value : h.value;
            lo = std::min(lo, sc);
            hi = std::max(hi, sc);
        }
    if (hi == 0.0) lo = hi = 1.0;
    lo *= 1e-2;
    hi *= 1e2;
    bool real_valued = true;
    for (int i = 0; i <= 16 && real_valued; ++i) {
        const cplx v = weyl_phi(lo * std::pow(hi / lo, i / 16.0));
        real_valued = std::abs(v.imag()) <= 1e-12 * std::abs(v);
    }
    if (real_valued)
        for (double r : detail::sign_changes([&](double t) { return weyl_phi(t).real(); }, lo, hi))
            hints.push_back(DecayHint::kink(r));
    auto g = [&](double t) -> double { return std::abs(weyl_phi(t)) * std::pow(t, alpha); };
    auto r = integrate_halfline(g, std::span<const DecayHint>(hints), opt);
    const double c = rgamma(alpha + 1.0).real();
    return {r.value * c, r.error_estimate * c, r.evaluations};
}

inline QuadratureResult<double> sobolev_norm(const Kernel& k, double alpha, const QuadOptions& opt = {1e-9}) {
    if (alpha < 0) throw ContractError("sobolev_norm: alpha must be nonnegative");
    const auto sh = k.shape(alpha);
    std::vector<DecayHint> h;
    for (double sc : sh.scales) h.push_back(DecayHint::scale(sc));
    if (sh.essential_scale) h.push_back(DecayHint::essential_at_zero(*sh.essential_scale));
    else if (sh.zero_exponent + alpha != 0.0) {
        const double q = sh.zero_exponent + alpha;
        if (!(q > -1)) throw DomainError("sobolev_norm: weighted integrand not integrable at 0");
        h.push_back(DecayHint::algebraic_at_zero(q));
    }
    if (sh.eps) h.push_back(DecayHint::exponential(sh.eps->real()));
    else if (std::isfinite(sh.tail_power)) {
        const double p = sh.tail_power - alpha;
        if (!(p > 1)) throw DomainError("sobolev_norm: weighted integrand not integrable at infinity");
        h.push_back(DecayHint::algebraic(p));
    }
    const WeylOptions wo;
    return sobolev_norm([&](double t) { return weyl_derivative(k, alpha, cplx(t), wo).value; }, alpha, std::move(h), opt);
}

}  // namespace fracext
