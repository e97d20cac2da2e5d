#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "complex.hpp"
#include "errors.hpp"

namespace fracext {

namespace detail {

inline bool is_nonpositive_integer(cplx x) {
    return x.imag() == 0.0 && x.real() <= 0.0 && x.real() == std::round(x.real());
}

// Lanczos approximation, g = 7, n = 9; valid for Re x >= 1/2.
inline cplx gamma_lanczos(cplx x) {
    static constexpr double g = 7.0;
    static constexpr std::array<double, 9> p = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    x -= 1.0;
    cplx acc = p[0];
    for (int i = 1; i < 9; ++i) acc += p[i] / (x + double(i));
    cplx t = x + g + 0.5;
    return std::sqrt(2 * pi) * std::exp((x + 0.5) * std::log(t) - t) * acc;
}

}  // namespace detail

inline cplx gamma(cplx x) {
    if (detail::is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "gamma: pole at " << x.real();
        throw DomainError(os.str());
    }
    if (x.real() < 0.5) return pi / (std::sin(pi * x) * detail::gamma_lanczos(1.0 - x));
    return detail::gamma_lanczos(x);
}

// Real overloads shadow glibc's legacy ::gamma (which is log-gamma).
inline cplx gamma(double x) { return gamma(cplx(x)); }
inline cplx gamma(int x) { return gamma(cplx(double(x))); }

// 1/Gamma(x), entire: zero at the poles of Gamma.
inline cplx rgamma(cplx x) {
    if (detail::is_nonpositive_integer(x)) return 0.0;
    if (x.real() < 0.5) return std::sin(pi * x) * detail::gamma_lanczos(1.0 - x) / pi;
    return 1.0 / detail::gamma_lanczos(x);
}

namespace detail {

inline constexpr int kSpecfunIterCap = 5000;

// Gamma(a, x) by the modified Lentz continued fraction; |arg x| < pi.
inline cplx upper_gamma_cf(cplx a, cplx x) {
    constexpr double tiny = 1e-300;
    cplx b = x + 1.0 - a;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < kSpecfunIterCap; ++i) {
        cplx an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        cplx del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return std::exp(-x + a * log(x)) * h;
    }
    throw ConvergenceError("incomplete gamma: continued fraction did not converge");
}

// sum_k x^k / (a (a+1) ... (a+k)), the series part of gamma(a, x) = x^a e^{-x} * sum.
inline cplx lower_gamma_series_sum(cplx a, cplx x) {
    cplx term = 1.0 / a, sum = term;
    for (int k = 1; k < kSpecfunIterCap; ++k) {
        term *= x / (a + double(k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
    }
    throw ConvergenceError("incomplete gamma: series did not converge");
}

// sum_k (-x)^k / (k! (a+k)); positive terms when x is negative real.
inline cplx kummer_sum(cplx a, cplx x) {
    cplx p = 1.0, sum = 1.0 / a;
    for (int k = 1; k < kSpecfunIterCap; ++k) {
        p *= -x / double(k);
        cplx term = p / (a + double(k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && double(k) > std::abs(x)) return sum;
    }
    throw ConvergenceError("incomplete gamma: Kummer series did not converge");
}

inline bool near_negative_axis(cplx x, double half_width) {
    return std::abs(arg(-x)) <= half_width;
}

}  // namespace detail

// gamma(a, x) = int_0^x s^{a-1} e^{-s} ds, principal branch of x^a.
inline cplx lower_incomplete_gamma(cplx a, cplx x) {
    if (!(a.real() > 0)) throw DomainError("lower_incomplete_gamma: requires Re a > 0");
    if (x == cplx(0)) return 0.0;
    if (std::abs(x) <= a.real() + 1.0)
        return std::exp(a * log(x) - x) * detail::lower_gamma_series_sum(a, x);
    if (detail::near_negative_axis(x, pi / 8))
        return std::exp(a * log(x)) * detail::kummer_sum(a, x);
    return gamma(a) - detail::upper_gamma_cf(a, x);
}

// Two-parameter Mittag-Leffler function E_{1,beta}(x) = sum_k x^k / Gamma(beta+k), beta >= 1.
inline cplx mittag_leffler1(double beta, cplx x) {
    if (!(beta >= 1.0)) throw DomainError("mittag_leffler1: requires beta >= 1");
    if (beta == 1.0) return std::exp(x);
    double ax = std::abs(x);
    if (ax <= 1.5) {
        cplx term = rgamma(beta), sum = term;
        for (int k = 0; k < detail::kSpecfunIterCap; ++k) {
            term *= x / (beta + double(k));
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
        }
        throw ConvergenceError("mittag_leffler1: series did not converge");
    }
    double a = beta - 1.0;
    if (x.real() <= 0.0 && ax >= 40.0) {
        // asymptotic expansion; exponentially small remainder
        cplx sum = 0.0, xi = 1.0 / x, p = 1.0;
        double last = INFINITY;
        for (int k = 1; k < 200; ++k) {
            p *= xi;
            cplx term = -p * rgamma(beta - double(k));
            double mag = std::abs(term);
            if (mag > last && term != cplx(0)) break;
            sum += term;
            if (term != cplx(0)) last = mag;
            if (mag < 1e-18 * std::abs(sum)) break;
        }
        return sum + pow(x, 1.0 - beta) * std::exp(x);
    }
    if (detail::near_negative_axis(x, pi / 8))
        return std::exp(x) * a * detail::kummer_sum(a, x) * rgamma(beta);
    // E = x^{1-beta} e^x (1 - Gamma(a,x)/Gamma(a))
    return pow(x, 1.0 - beta) * (std::exp(x) - std::exp(x) * detail::upper_gamma_cf(a, x) * rgamma(a));
}

// Fractional order sigma with 0 < Re sigma < 1.
class FracOrder {
public:
    FracOrder(cplx s) : s_(s) {  // NOLINT(google-explicit-constructor)
        if (!(s.real() > 0.0 && s.real() < 1.0) || !std::isfinite(s.imag())) {
            std::ostringstream os;
            os << "fractional order must satisfy 0 < Re sigma < 1, got " << s;
            throw DomainError(os.str());
        }
    }
    FracOrder(double s) : FracOrder(cplx(s)) {}  // NOLINT(google-explicit-constructor)

    cplx value() const { return s_; }
    double real() const { return s_.real(); }
    bool is_real() const { return s_.imag() == 0.0; }
    bool is_half() const { return std::abs(s_ - 0.5) < 1e-8; }

private:
    cplx s_;
};

// Working band for sigma in the solvers and CLI.
struct SigmaBand {
    double lo = 0.02;
    double hi = 0.98;
};
inline constexpr SigmaBand kSigmaBand{};

inline void require_sigma_band(const FracOrder& s, SigmaBand band = kSigmaBand) {
    if (!(s.real() > band.lo && s.real() < band.hi)) {
        std::ostringstream os;
        os << "sigma real part " << s.real() << " outside the working band (" << band.lo << ", " << band.hi
           << ")";
        throw DomainError(os.str());
    }
}

struct NamedConstants {
    cplx c_sigma;
    cplx d_sigma;
    std::optional<cplx> kappa_sigma;  // absent at sigma = 1/2
    cplx neumann_factor;              // 2 sigma c_sigma
};

inline NamedConstants constants_for(const FracOrder& so) {
    const cplx s = so.value();
    const cplx four_s = std::exp(s * std::log(4.0));
    NamedConstants k;
    k.c_sigma = gamma(-s) / (four_s * gamma(s));
    k.d_sigma = 2.0 * gamma(s + 0.5) / (std::sqrt(pi) * gamma(s));
    if (!so.is_half()) k.kappa_sigma = 2.0 * gamma(0.5 - s) / (four_s * std::sqrt(pi) * gamma(s));
    k.neumann_factor = 2.0 * s * k.c_sigma;
    return k;
}

}  // namespace fracext
