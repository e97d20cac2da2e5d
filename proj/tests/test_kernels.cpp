#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace support;

TEST_CASE("kernel point values", "[kernels]") {
    CHECK(rel(Kernel::b(0.5, 1.0).value(0.25), 4.0 / std::sqrt(pi) * std::exp(-1.0)) < 1e-14);
    CHECK(rel(Kernel::h(0.5).value(4.0), 1.0 / (2.0 * std::sqrt(pi))) < 1e-14);
    CHECK(rel(Kernel::b(0.3, cplx(1, 0.2)).value(0.7), oracle::b_03_1p02i_07) < 1e-13);
    CHECK(rel(Kernel::B(0.3, cplx(1, 0.2)).value(0.7), oracle::B_03_1p02i_07) < 1e-13);
    CHECK(rel(eval(Kernel::exp_eps(2.0), 0.5), std::exp(-1.0)) < 1e-15);
    CHECK(rel(Kernel::poisson_cosine(0.3, cplx(1, 0.2)).value(1.5), oracle::poisson_03) < 1e-13);
    CHECK(rel(Kernel::cosine_fractional(0.3, cplx(1, 0.2)).value(1.5), oracle::cosfrac_03) < 1e-12);
    CHECK(rel(Kernel::cosine_log(cplx(1, 0.2)).value(1.5), oracle::coslog) < 1e-13);
    CHECK_THROWS_AS(Kernel::b(0.5, 1.0).value(0.0), DomainError);
    CHECK_THROWS_AS(Kernel::b(0.5, 1.0).value(-1.0), DomainError);
}

TEST_CASE("B minus h keeps its digits at large t", "[kernels]") {
    const cplx v = Kernel::B_minus_h(0.3, 1.0).value(1e6);
    CHECK(rel(v, oracle::Bmh_03_1_1e6) < 1e-12);
    // leading Taylor term -z^2 / (4 Gamma(sigma) t^{2 - sigma})
    const double t = 1e8;
    const cplx lead = -1.0 / (4.0 * fracext::gamma(0.3) * std::pow(t, 1.7));
    CHECK(rel(Kernel::B_minus_h(0.3, 1.0).value(t), lead) < 1e-7);
}

TEST_CASE("time derivatives of b and B", "[kernels]") {
    const Kernel b = Kernel::b(0.5, 1.0), B = Kernel::B(0.5, 1.0);
    CHECK(rel(time_derivative(b, 1, 1.0), (0.25 - 1.5) * b.value(1.0)) < 1e-14);
    CHECK(rel(time_derivative(B, 1, 1.0), (0.25 - 0.5) * B.value(1.0)) < 1e-14);
    const cplx z(0.9, 0.1);
    CHECK(rel(Kernel::b(0.4, z).derivative(2, 0.6), oracle::b_dt2_04_09p01i_06) < 1e-12);
    CHECK(rel(Kernel::B(0.4, z).derivative(3, 0.6), oracle::B_dt3_04_09p01i_06) < 1e-12);
    // second derivative against a centered difference of the first
    const Kernel k = Kernel::b(0.35, cplx(1.1, 0.3));
    const double t = 0.8, h = 1e-4;
    const cplx fd = (k.derivative(1, t + h) - k.derivative(1, t - h)) / (2 * h);
    CHECK(rel(k.derivative(2, t), fd) < 1e-6);
}

TEST_CASE("z derivatives of b and B", "[kernels]") {
    const cplx z(0.9, 0.1);
    CHECK(rel(z_derivative(Kernel::b(0.4, z), 2, 0.6), oracle::b_dz2_04_09p01i_06) < 1e-12);
    CHECK(rel(z_derivative(Kernel::B(0.4, z), 1, 0.6), oracle::B_dz1_04_09p01i_06) < 1e-12);
    const Kernel b = Kernel::b(0.5, 1.0), B = Kernel::B(0.5, 1.0);
    CHECK(rel(z_derivative(b, 1, 1.0), 0.5 * b.value(1.0)) < 1e-14);
    const double t = 0.7;
    const cplx zz(1.2, 0.2);
    const Kernel B2 = Kernel::B(0.3, zz);
    CHECK(rel(z_derivative(B2, 2, t), (zz * zz / (4 * t * t) - 1.0 / (2 * t)) * B2.value(t)) < 1e-13);
}

TEST_CASE("derivative coefficient tables", "[kernels]") {
    using F = DerivativeCoefficients::Family;
    const cplx s(0.3, 0.1);
    for (int n = 0; n <= 6; ++n) {
        cplx k0 = 1.0;
        for (int j = 1; j <= n; ++j) k0 *= s - double(j);
        const auto t = derivative_coefficients(F::B, s, n);
        REQUIRE(t.table.size() == std::size_t(n + 1));
        CHECK(rel(t.table[0], k0) < 1e-14);
    }
    CHECK_THROWS_AS(derivative_coefficients(F::b, s, -1), ContractError);
}

TEST_CASE("kernel ODEs", "[kernels]") {
    for (double s : {0.2, 0.5, 0.8})
        for (cplx z : {cplx(1.0), cplx(0.8, 0.4)})
            for (double t : {0.3, 1.7}) {
                for (const Kernel& k : {Kernel::b(s, z), Kernel::B(s, z)}) {
                    const cplx d1 = z_derivative(k, 1, t), d2 = z_derivative(k, 2, t), dt = time_derivative(k, 1, t);
                    const double scale = std::max({std::abs(d2), std::abs(dt)});
                    CHECK(std::abs(d2 + (1.0 - 2.0 * s) / z * d1 - dt) / scale < 1e-12);
                }
            }
}

TEST_CASE("derB identity", "[kernels]") {
    for (double s : {0.25, 0.6}) {
        const cplx z(1.0, 0.2);
        const double t = 0.7;
        const cplx lhs = std::exp((1.0 - 2.0 * s) * std::log(z)) * z_derivative(Kernel::B(s, z), 1, t);
        const cplx rhs = s * fracext::gamma(-s) / (std::pow(2.0, 2 * s - 1) * fracext::gamma(s)) * Kernel::b(1.0 - s, z).value(t);
        CHECK(rel(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("Weyl integrals", "[kernels]") {
    CHECK(rel(weyl_integral(Kernel::exp_eps(2.0), 0.7, 0.5).value, std::pow(2.0, -0.7) * std::exp(-1.0)) < 1e-11);
    CHECK(rel(weyl_integral(Kernel::b(0.5, 1.0), 1.0, 0.0).value, 1.0) < 1e-10);
    CHECK(rel(weyl_integral(Kernel::b(0.3, 1.0), 0.5, 0.4).value, oracle::weyl_int_b03_1__05_at04) < 1e-9);
    // (h^{1/2} e_1) at s = 0 with beta = 1/2 is int t^{-1/2} e^{-t} / Gamma(1/2)
    CHECK(rel(weyl_integral(Kernel::times_exp(Kernel::h(0.5), 1.0), 1.0, 0.0).value, 1.0) < 1e-10);
}

TEST_CASE("Weyl derivatives", "[kernels]") {
    for (double a : {0.3, 1.0, 1.6}) CHECK(rel(weyl_derivative(Kernel::exp_eps(1.5), a, 0.4).value, std::pow(1.5, a) * std::exp(-0.6)) < 1e-10);
    CHECK(rel(weyl_derivative(Kernel::b(0.5, 1.0), 0.7, 0.5).value, oracle::weyl_der_b05_1__07_at05) < 1e-9);
    const Kernel b = Kernel::b(0.4, cplx(1, 0.3));
    CHECK(rel(weyl_derivative(b, 2.0, 0.9).value, time_derivative(b, 2, 0.9)) < 1e-12);
}

TEST_CASE("Weyl composition on e_1", "[kernels]") {
    const Kernel e = Kernel::exp_eps(1.0);
    auto inner = [&](cplx t) { return weyl_derivative(e, 0.4, t).value; };
    const std::vector<DecayHint> h{DecayHint::exponential(1.0), DecayHint::scale(1.0)};
    const cplx composed = weyl_derivative_analytic(inner, 0.5, 1.0, h, 0.25, 16, {1e-11}).value;
    CHECK(rel(composed, weyl_derivative(e, 0.9, 1.0).value) < 1e-9);
}

TEST_CASE("Sobolev norms", "[kernels]") {
    CHECK(std::abs(sobolev_norm(Kernel::exp_eps(1.0), 0.0).value - 1.0) < 1e-9);
    CHECK(std::abs(sobolev_norm(Kernel::exp_eps(2.0), 1.0).value - 0.5) < 1e-9);
    CHECK(std::abs(sobolev_norm(Kernel::b(0.5, 1.0), 1.0).value - oracle::sobolev_b05_1__1.real()) < 1e-7);
}

TEST_CASE("Sobolev norm bound grows with the sector aperture", "[kernels]") {
    // ||b^{sigma,z}||_(1) <= C (|z|^2 / Re z^2)^{1+sigma}: the ratio stays bounded as arg z grows
    const double s = 0.4;
    std::vector<double> ratios;
    for (double th : {0.0, 0.3, 0.6}) {
        const cplx z = std::polar(1.0, th);
        const double bound = std::pow(std::norm(z) / (z * z).real(), 1.0 + s);
        ratios.push_back(sobolev_norm(Kernel::b(s, z), 1.0, {1e-7}).value / bound);
    }
    for (double r : ratios) CHECK(r < 10.0 * ratios.front());
}

TEST_CASE("approximation by exponential damping", "[kernels]") {
    // ||b e_eps - b||_(1) with W^1 = -d/dt
    const Kernel b = Kernel::b(0.5, 1.0);
    double last = INFINITY;
    for (double eps : {1.0, 0.1, 0.01}) {
        const Kernel be = Kernel::times_exp(b, eps);
        auto w = [&](double t) { return time_derivative(b, 1, t) - time_derivative(be, 1, t); };
        const double d = sobolev_norm(w, 1.0, {DecayHint::essential_at_zero(0.25), DecayHint::algebraic(1.5), DecayHint::scale(1.0 / eps)}).value;
        CHECK(d < last);
        last = d;
    }
    CHECK(last < 0.1);
}

TEST_CASE("vanishing at both ends", "[kernels]") {
    const Kernel b = Kernel::b(0.5, 1.0);
    CHECK(std::abs(b.value(1e-6)) < 1e-100);
    CHECK(std::abs(b.value(1e6)) < 1e-8);
}

TEST_CASE("half-line convolutions", "[kernels]") {
    for (double s : {0.5, 1.0, 2.0}) {
        CHECK(rel(convolve_halfline(Kernel::exp_eps(1.0), Kernel::exp_eps(1.0), s).value, s * std::exp(-s)) < 1e-10);
        CHECK(rel(convolve_halfline(Kernel::h(0.5), Kernel::h(0.5), s).value, 1.0) < 1e-10);
        CHECK(rel(convolve_halfline(Kernel::h(0.3), Kernel::b(0.3, 1.0), s).value, Kernel::B(0.3, 1.0).value(s)) < 1e-8);
    }
}

TEST_CASE("sector points", "[kernels]") {
    CHECK_NOTHROW(SectorPoint::make(cplx(1, 0.5)));
    CHECK_THROWS_AS(SectorPoint::make(cplx(1, 1)), DomainError);
    CHECK_NOTHROW(SectorPoint::make(std::polar(1.0, pi / 4), pi / 4, true));
    CHECK_THROWS_AS(SectorPoint::make(0.0), DomainError);
}
