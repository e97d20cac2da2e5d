#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace fracext {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

enum class Branch {
    principal,     // arg in (-pi, pi]
    positive_2pi,  // arg in [0, 2pi)
};

inline double arg(cplx z, Branch br = Branch::principal) {
    double a = std::atan2(z.imag(), z.real());
    if (br == Branch::principal) {
        if (a == -pi) a = pi;  // signed-zero imaginary part
        return a;
    }
    if (a < 0) a += 2 * pi;
    if (a >= 2 * pi) a = 0;
    return a;
}

inline cplx log(cplx z, Branch br = Branch::principal) {
    return {std::log(std::abs(z)), arg(z, br)};
}

// z^w on the requested branch; 0^w = 0 for Re w > 0.
inline cplx pow(cplx z, cplx w, Branch br = Branch::principal) {
    if (z == cplx(0)) {
        if (w == cplx(0)) return 1.0;
        return 0.0;
    }
    return std::exp(w * log(z, br));
}

// e^z - 1 without cancellation for small |z|.
inline cplx expm1(cplx z) {
    if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
    // e^{x+iy} - 1 = expm1(x)cos y + (cos y - 1) + i e^x sin y
    double x = z.real(), y = z.imag();
    double cm1 = -2.0 * std::sin(0.5 * y) * std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) + cm1, std::exp(x) * std::sin(y)};
}

// log(1+z) without cancellation for small |z| (Kahan's trick).
inline cplx log1p(cplx z) {
    cplx u = 1.0 + z;
    if (u == cplx(1.0)) return z;
    if (std::abs(z) > 0.5) return std::log(u);
    return std::log(u) * z / (u - 1.0);
}

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Open angular interval (lo, hi) of admissible ray directions.
struct AngleWindow {
    double lo = -pi / 2;
    double hi = pi / 2;

    bool empty() const { return !(lo < hi); }
    bool contains(double th) const { return lo < th && th < hi; }
    double mid() const { return 0.5 * (lo + hi); }
    AngleWindow intersect(const AngleWindow& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
};

}  // namespace fracext
