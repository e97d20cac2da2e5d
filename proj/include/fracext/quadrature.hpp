#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"

namespace fracext {

inline double norm_of(double v) { return std::abs(v); }
inline double norm_of(cplx v) { return std::abs(v); }
template <class Derived>
double norm_of(const Eigen::MatrixBase<Derived>& v) {
    return v.norm();
}

inline bool all_finite(double v) { return std::isfinite(v); }
inline bool all_finite(cplx v) { return is_finite(v); }
template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
    return v.allFinite();
}

template <class V = cplx>
struct QuadratureResult {
    V value{};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int min_level = 3;
    int max_level = 10;
};

// Asymptotic information about an integrand on (0, inf).
struct DecayHint {
    enum class Kind {
        exponential_at_infinity,        // ~ e^{-value t}
        algebraic_at_infinity,          // ~ t^{-value}, value > 1
        essential_singularity_at_zero,  // ~ e^{-value / t}
        algebraic_singularity_at_zero,  // ~ t^{value}, value > -1
        breakpoint,                     // a characteristic scale worth splitting at
        kink,                           // a point where f is not smooth; always split there exactly
    };
    Kind kind;
    double value;

    static DecayHint exponential(double rate) { return {Kind::exponential_at_infinity, rate}; }
    static DecayHint algebraic(double p) { return {Kind::algebraic_at_infinity, p}; }
    static DecayHint essential_at_zero(double scale) { return {Kind::essential_singularity_at_zero, scale}; }
    static DecayHint algebraic_at_zero(double q) { return {Kind::algebraic_singularity_at_zero, q}; }
    static DecayHint scale(double s) { return {Kind::breakpoint, s}; }
    static DecayHint kink(double t) { return {Kind::kink, t}; }
};

namespace detail {

template <class V>
void accumulate(std::optional<V>& acc, const V& v) {
    if (acc) {
        *acc += v;
    } else {
        acc = v;
    }
}

// One piece of a halfline integral: integral over v in (0,1) of g(v), where g already
// contains the Jacobian of the piece's substitution.
template <class V>
struct TsPiece {
    std::optional<V> sum;  // sum of w_k g(v_k) over all nodes so far (without the step h)
    V estimate{};
    V previous{};
    bool has_previous = false;
};

// Nodes of the tanh-sinh rule on (0,1), at parameter u: v = 1/(1+E), E = e^{-pi sinh u}.
struct TsNode {
    double v;
    double one_minus_v;
    double weight;
};

inline TsNode ts_node(double u) {
    const double x = 0.5 * pi * std::sinh(u);
    const double e = std::exp(-2.0 * x);
    const double v = 1.0 / (1.0 + e);
    const double w = pi * std::cosh(u) * e / ((1.0 + e) * (1.0 + e));
    return {v, e / (1.0 + e), w};
}

inline constexpr double kTsRange = 4.0;

// Integrate several (0,1) pieces simultaneously with level-synchronous refinement;
// convergence is judged on the total.
template <class V, class G>
QuadratureResult<V> tanh_sinh_pieces(const std::vector<G>& pieces, const QuadOptions& opt) {
    const std::size_t np = pieces.size();
    std::vector<TsPiece<V>> st(np);
    std::size_t evals = 0;
    auto add_nodes = [&](double h, bool odd_only) {
        const long nmax = long(std::ceil(kTsRange / h));
        for (std::size_t p = 0; p < np; ++p) {
            for (long k = -nmax; k <= nmax; ++k) {
                if (odd_only && (k % 2 == 0)) continue;
                const TsNode nd = ts_node(double(k) * h);
                if (nd.weight == 0.0 || nd.v == 0.0 || nd.one_minus_v == 0.0) continue;
                auto val = pieces[p](nd.v, nd.one_minus_v);
                ++evals;
                if (!val) continue;  // node mapped outside representable range
                if (!all_finite(*val)) {
                    std::ostringstream os;
                    os << "quadrature: non-finite integrand sample (piece " << p << ", node " << nd.v << ")";
                    throw ConvergenceError(os.str());
                }
                accumulate<V>(st[p].sum, V(*val * nd.weight));
            }
        }
    };
    double h = 1.0;
    add_nodes(h, false);
    std::optional<V> total_prev;
    for (int level = 0; level <= opt.max_level; ++level) {
        if (level > 0) {
            h *= 0.5;
            add_nodes(h, true);
        }
        std::optional<V> total;
        double diff = 0.0;
        for (auto& s : st) {
            if (!s.sum) continue;
            V est = V(*s.sum * h);
            if (s.has_previous) diff += norm_of(V(est - s.previous));
            else if (level > 0) diff += norm_of(est);
            s.previous = est;
            s.has_previous = true;
            accumulate<V>(total, est);
        }
        if (!total) return {V{}, 0.0, std::max<std::size_t>(evals, 1)};  // nothing representable
        if (level >= opt.min_level && total_prev) {
            const double tol = std::max(opt.rel_tol * norm_of(*total), opt.abs_tol);
            if (diff <= tol) return {*total, diff, evals};
        }
        total_prev = total;
    }
    std::ostringstream os;
    os << "quadrature: tanh-sinh refinement cap reached (level " << opt.max_level << ")";
    throw ConvergenceError(os.str());
}

struct HalflinePlan {
    std::vector<double> breaks;  // increasing, > 0
    std::optional<double> q0;    // algebraic exponent at zero
    std::optional<double> p_inf; // algebraic power at infinity
    std::optional<double> rate;  // exponential rate at infinity
};

inline HalflinePlan plan_halfline(std::span<const DecayHint> hints) {
    HalflinePlan plan;
    std::vector<double> scales, kinks;
    for (const auto& h : hints) {
        switch (h.kind) {
            case DecayHint::Kind::exponential_at_infinity:
                if (!(h.value > 0)) throw ContractError("DecayHint: exponential rate must be positive");
                plan.rate = plan.rate ? std::max(*plan.rate, h.value) : h.value;
                scales.push_back(1.0 / h.value);
                break;
            case DecayHint::Kind::algebraic_at_infinity:
                if (!(h.value > 1)) throw ContractError("DecayHint: algebraic tail power must exceed 1 (integrability)");
                plan.p_inf = plan.p_inf ? std::min(*plan.p_inf, h.value) : h.value;
                break;
            case DecayHint::Kind::essential_singularity_at_zero:
                if (!(h.value > 0)) throw ContractError("DecayHint: essential-singularity scale must be positive");
                scales.push_back(h.value);
                break;
            case DecayHint::Kind::algebraic_singularity_at_zero:
                if (!(h.value > -1)) throw ContractError("DecayHint: algebraic exponent at zero must exceed -1");
                plan.q0 = plan.q0 ? std::min(*plan.q0, h.value) : h.value;
                break;
            case DecayHint::Kind::breakpoint:
                if (!(h.value > 0)) throw ContractError("DecayHint: breakpoint must be positive");
                scales.push_back(h.value);
                break;
            case DecayHint::Kind::kink:
                if (!(h.value > 0)) throw ContractError("DecayHint: kink must be positive");
                kinks.push_back(h.value);
                break;
        }
    }
    if (scales.empty() && kinks.empty()) scales.push_back(1.0);
    std::sort(scales.begin(), scales.end());
    std::sort(kinks.begin(), kinks.end());
    // kinks are kept exactly; scales within a factor 1.5 of a kept point are dropped
    auto near_kink = [&](double s) {
        for (double k : kinks)
            if (s < 1.5 * k && k < 1.5 * s) return true;
        return false;
    };
    std::vector<double> merged;
    for (double s : scales) {
        if (near_kink(s)) continue;
        if (merged.empty() || s > 1.5 * merged.back()) merged.push_back(s);
    }
    for (double k : kinks)
        if (merged.empty() || std::find_if(merged.begin(), merged.end(), [&](double m) { return std::abs(m - k) <= 1e-14 * k; }) == merged.end())
            merged.push_back(k);
    std::sort(merged.begin(), merged.end());
    plan.breaks = std::move(merged);
    return plan;
}

// Build (0,1)-pieces for integral over (0,inf) of F(t) where F returns V.
template <class V, class F>
auto halfline_pieces(const F& f, const HalflinePlan& plan) {
    using G = std::function<std::optional<V>(double, double)>;
    std::vector<G> pieces;
    const double b0 = plan.breaks.front();
    if (plan.q0 && *plan.q0 != 0.0) {
        const double k = 1.0 / (1.0 + *plan.q0);
        pieces.push_back([=](double v, double) -> std::optional<V> {
            const double t = b0 * std::pow(v, k);
            if (t <= 0.0 || !std::isfinite(t)) return std::nullopt;
            return V(f(t) * (b0 * k * std::pow(v, k - 1.0)));
        });
    } else {
        pieces.push_back([=](double v, double) -> std::optional<V> {
            const double t = b0 * v;
            if (t <= 0.0) return std::nullopt;
            return V(f(t) * b0);
        });
    }
    for (std::size_t i = 0; i + 1 < plan.breaks.size(); ++i) {
        const double lo = plan.breaks[i], hi = plan.breaks[i + 1];
        const double lr = std::log(hi / lo);
        pieces.push_back([=](double v, double) -> std::optional<V> {
            const double t = lo * std::exp(lr * v);
            return V(f(t) * (t * lr));
        });
    }
    const double bm = plan.breaks.back();
    if (plan.p_inf || !plan.rate) {
        const double p = plan.p_inf.value_or(2.0);
        const double k = 1.0 / (p - 1.0);
        pieces.push_back([=](double v, double) -> std::optional<V> {
            const double t = bm * std::pow(v, -k);
            // beyond 1e200 an integrable algebraic tail contributes nothing representable
            if (!(t < 1e200)) return std::nullopt;
            return V(f(t) * (k * t / v));
        });
    } else {
        const double r = *plan.rate;
        pieces.push_back([=](double v, double) -> std::optional<V> {
            const double t = bm - std::log(v) / r;
            return V(f(t) * (1.0 / (r * v)));
        });
    }
    return pieces;
}

}  // namespace detail

// Integral over (0, inf) of f(t), f: double -> V.
template <class F>
auto integrate_halfline(const F& f, std::span<const DecayHint> hints, const QuadOptions& opt = {}) {
    using V = std::decay_t<decltype(f(1.0))>;
    if (!(opt.rel_tol > 0) && !(opt.abs_tol > 0)) throw ContractError("quadrature: tolerance must be positive");
    const auto plan = detail::plan_halfline(hints);
    auto pieces = detail::halfline_pieces<V>(f, plan);
    return detail::tanh_sinh_pieces<V>(pieces, opt);
}

template <class F>
auto integrate_halfline(const F& f, std::initializer_list<DecayHint> hints, const QuadOptions& opt = {}) {
    return integrate_halfline(f, std::span<const DecayHint>(hints.begin(), hints.size()), opt);
}

// Integral along the ray t = r e^{i theta}, r in (0, inf), of f(t) dt; f: cplx -> V.
// Hints refer to the r-variable.
template <class F>
auto integrate_ray(const F& f, double theta, std::span<const DecayHint> hints, const QuadOptions& opt = {}) {
    const cplx dir = std::polar(1.0, theta);
    using V = std::decay_t<decltype(f(cplx(1.0)))>;
    auto g = [&](double r) -> V { return V(f(r * dir) * dir); };
    return integrate_halfline(g, hints, opt);
}

// Endpoint behaviour (t-a)^{q_left}, (b-t)^{q_right} for integrate_interval.
struct EndpointHints {
    double q_left = 0.0;
    double q_right = 0.0;
};

namespace detail {

struct GK15 {
    static constexpr std::array<double, 8> xk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

template <class V, class G>
std::pair<V, double> gk15(const G& g, double a, double b) {
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    V fc = g(c);
    V resk = V(fc * GK15::wk[7]);
    V resg = V(fc * GK15::wg[3]);
    for (int j = 0; j < 7; ++j) {
        const double dx = hl * GK15::xk[j];
        V f1 = g(c - dx), f2 = g(c + dx);
        V s = V(f1 + f2);
        resk += V(s * GK15::wk[j]);
        if (j % 2 == 1) resg += V(s * GK15::wg[j / 2]);
    }
    V k = V(resk * hl);
    V gg = V(resg * hl);
    return {k, norm_of(V(k - gg))};
}

template <class V, class G>
QuadratureResult<V> adaptive_gk(const G& g, double a, double b, const QuadOptions& opt, int max_intervals) {
    struct Seg {
        double a, b;
        V val;
        double err;
        bool operator<(const Seg& o) const { return err < o.err; }
    };
    std::priority_queue<Seg> q;
    auto [v0, e0] = gk15<V>(g, a, b);
    std::size_t evals = 15;
    q.push({a, b, v0, e0});
    V total = v0;
    double err = e0;
    int count = 1;
    while (true) {
        const double tol = std::max(opt.rel_tol * norm_of(total), opt.abs_tol);
        if (err <= tol) break;
        if (count >= max_intervals) throw ConvergenceError("quadrature: adaptive bisection refinement cap exceeded");
        Seg s = q.top();
        q.pop();
        const double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) throw ConvergenceError("quadrature: interval underflow during bisection");
        auto [v1, e1] = gk15<V>(g, s.a, m);
        auto [v2, e2] = gk15<V>(g, m, s.b);
        evals += 30;
        total += V(v1 + v2 - s.val);
        err += e1 + e2 - s.err;
        q.push({s.a, m, v1, e1});
        q.push({m, s.b, v2, e2});
        ++count;
    }
    // Recompute the total and error from the leaves (no drift from running updates).
    V sum = V(total * 0.0);
    double es = 0.0;
    while (!q.empty()) {
        sum += q.top().val;
        es += q.top().err;
        q.pop();
    }
    if (!all_finite(sum)) throw ConvergenceError("quadrature: non-finite integrand sample");
    return {sum, es, evals};
}

}  // namespace detail

// Integral over [a, b] of f(t), f: double -> V. Endpoint singularities are graded out when hinted.
template <class F>
auto integrate_interval(const F& f, double a, double b, const QuadOptions& opt = {}, EndpointHints eh = {}) {
    using V = std::decay_t<decltype(f(a))>;
    if (!(a < b)) throw ContractError("integrate_interval: requires a < b");
    if (!(eh.q_left > -1.0) || !(eh.q_right > -1.0))
        throw ContractError("integrate_interval: endpoint exponents must exceed -1");
    constexpr int kMaxIntervals = 4000;
    if (eh.q_left == 0.0 && eh.q_right == 0.0) {
        return detail::adaptive_gk<V>([&](double t) { return V(f(t)); }, a, b, opt, kMaxIntervals);
    }
    const double m = 0.5 * (a + b), half = m - a;
    // left half: t = a + half*v^{kl}; right half: t = b - half*v^{kr}
    const double kl = 1.0 / (1.0 + eh.q_left), kr = 1.0 / (1.0 + eh.q_right);
    auto gl = [&](double v) -> V {
        if (v <= 0.0) return V(f(m) * 0.0);
        return V(f(a + half * std::pow(v, kl)) * (half * kl * std::pow(v, kl - 1.0)));
    };
    auto gr = [&](double v) -> V {
        if (v <= 0.0) return V(f(m) * 0.0);
        return V(f(b - half * std::pow(v, kr)) * (half * kr * std::pow(v, kr - 1.0)));
    };
    QuadOptions half_opt = opt;
    auto r1 = detail::adaptive_gk<V>(gl, 0.0, 1.0, half_opt, kMaxIntervals);
    auto r2 = detail::adaptive_gk<V>(gr, 0.0, 1.0, half_opt, kMaxIntervals);
    return QuadratureResult<V>{V(r1.value + r2.value), r1.error_estimate + r2.error_estimate,
                               r1.evaluations + r2.evaluations};
}

// Wynn epsilon extrapolation of a sequence of partial sums; returns the deepest even-column entry.
inline cplx wynn_epsilon(std::span<const cplx> s) {
    const std::size_t n = s.size();
    if (n == 0) throw ContractError("wynn_epsilon: empty sequence");
    if (n < 3) return s.back();
    std::vector<cplx> prev(n + 1, 0.0), cur(s.begin(), s.end());
    cplx best = s.back();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<cplx> next(n - k);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const cplx d = cur[i + 1] - cur[i];
            if (d == cplx(0)) return cur[i + 1];
            next[i] = prev[i + 1] + 1.0 / d;
        }
        prev = cur;
        cur = next;
        if (k % 2 == 0 && !cur.empty()) best = cur.back();
    }
    return best;
}

// Integral over (0, inf) of an oscillatory f with angular frequency omega, by half-period panels
// summed pairwise and accelerated with Wynn's epsilon algorithm.
template <class F>
QuadratureResult<cplx> integrate_oscillatory(const F& f, double omega, const QuadOptions& opt = {},
                                             double q_at_zero = 0.0) {
    if (!(omega > 0)) throw ContractError("integrate_oscillatory: omega must be positive");
    const double period = pi / omega;
    constexpr int kMaxPanels = 400;
    std::vector<cplx> partial;
    std::size_t evals = 0;
    cplx run = 0.0, last_est = 0.0;
    int stable = 0;
    QuadOptions popt = opt;
    popt.rel_tol = std::min(opt.rel_tol, 1e-12);
    for (int k = 0; k < kMaxPanels; ++k) {
        const double a = k * period, b = (k + 1) * period;
        EndpointHints eh{};
        if (k == 0) eh.q_left = q_at_zero;
        auto r = integrate_interval([&](double t) { return cplx(f(t)); }, a, b, popt, eh);
        evals += r.evaluations;
        run += r.value;
        partial.push_back(run);
        if (partial.size() >= 6) {
            const cplx est = wynn_epsilon(partial);
            const double d = std::abs(est - last_est);
            if (d <= std::max(opt.rel_tol * std::abs(est), opt.abs_tol)) {
                if (++stable >= 2) return {est, d, evals};
            } else {
                stable = 0;
            }
            last_est = est;
        }
    }
    throw ConvergenceError("integrate_oscillatory: panel cap reached without convergence");
}

template <class V>
struct ExtrapolationSample {
    double y;
    V value;
};

template <class V>
struct RichardsonResult {
    V limit{};
    double diagnostic = 0.0;
    int level = 0;                    // number of eliminated terms in the chosen entry
    std::vector<V> running;           // best extrapolant using samples 0..k
    std::vector<double> running_diag; // its diagnostic
};

// Richardson extrapolation on a geometric grid for value(y) = L + sum_j c_j y^{p_j} + ...
// The exponents are eliminated in the given order (ascending real part expected).
template <class V>
RichardsonResult<V> richardson_limit(std::span<const ExtrapolationSample<V>> s, std::span<const cplx> exponents) {
    const std::size_t n = s.size();
    if (n < 3) throw ContractError("richardson_limit: at least 3 samples required");
    const double r = s[1].y / s[0].y;
    if (!(r > 0 && r < 1)) throw ContractError("richardson_limit: grid must decrease geometrically with ratio in (0,1)");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(s[i - 1].y > 0) || std::abs(s[i].y / s[i - 1].y - r) > 1e-9 * r)
            throw ContractError("richardson_limit: samples are not on a geometric grid");
    }
    if (exponents.empty()) throw ContractError("richardson_limit: no exponents given");
    const std::size_t levels = std::min(exponents.size(), n - 1);
    // T[i][j]
    std::vector<std::vector<V>> T(n);
    for (std::size_t i = 0; i < n; ++i) {
        T[i].push_back(s[i].value);
        for (std::size_t j = 1; j <= std::min(i, levels); ++j) {
            const cplx rho = std::exp(exponents[j - 1] * std::log(r));
            T[i].push_back(V((T[i][j - 1] - T[i - 1][j - 1] * rho) / (1.0 - rho)));
        }
    }
    RichardsonResult<V> res;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0) {
            res.running.push_back(T[0][0]);
            res.running_diag.push_back(INFINITY);
            continue;
        }
        std::size_t best = 0;
        double bd = INFINITY;
        for (std::size_t j = 0; j < T[i].size() && j < T[i - 1].size(); ++j) {
            const double d = norm_of(V(T[i][j] - T[i - 1][j]));
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        res.running.push_back(T[i][best]);
        res.running_diag.push_back(bd);
        if (i == n - 1) {
            res.limit = T[i][best];
            res.diagnostic = bd;
            res.level = int(best);
        }
    }
    return res;
}

// Single-exponent model: eliminates p, 2p, 3p, ...
template <class V>
RichardsonResult<V> richardson_limit(std::span<const ExtrapolationSample<V>> s, double p) {
    if (!(p > 0)) throw ContractError("richardson_limit: exponent must be positive");
    std::vector<cplx> ex;
    for (std::size_t k = 1; k < s.size(); ++k) ex.push_back(double(k) * p);
    return richardson_limit<V>(s, std::span<const cplx>(ex));
}

}  // namespace fracext
