#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace support;

TEST_CASE("half-line integrals", "[quadrature]") {
    auto r = integrate_halfline([](double t) { return cplx(std::exp(-t)); }, {DecayHint::exponential(1.0)});
    CHECK(rel(r.value, 1.0) < 1e-12);
    CHECK(r.error_estimate < 1e-8);
    auto g = integrate_halfline([](double t) { return cplx(std::exp(-t) / std::sqrt(t)); },
                                {DecayHint::algebraic_at_zero(-0.5), DecayHint::exponential(1.0)});
    CHECK(rel(g.value, std::sqrt(pi)) < 1e-12);
    const Kernel b = Kernel::b(0.5, 1.0);
    auto n = integrate_halfline([&](double t) { return b.value(t); }, {DecayHint::essential_at_zero(0.25), DecayHint::algebraic(1.5)});
    CHECK(rel(n.value, 1.0) < 1e-10);
}

TEST_CASE("algebraic tails", "[quadrature]") {
    auto r = integrate_halfline([](double t) { return cplx(1.0 / (1.0 + t * t)); }, {DecayHint::algebraic(2.0)});
    CHECK(rel(r.value, pi / 2) < 1e-11);
    auto o = integrate_halfline([](double t) { return cplx(1.0 / (std::sqrt(t) * (1.0 + t))); },
                                {DecayHint::algebraic_at_zero(-0.5), DecayHint::algebraic(1.5)});
    CHECK(rel(o.value, pi) < 1e-11);
}

TEST_CASE("rotated ray integral", "[quadrature]") {
    // int_0^inf e^{-(1+i) t} dt along the ray theta = -pi/8 equals 1/(1+i)
    const double th = -pi / 8;
    auto r = integrate_ray([](cplx t) { return std::exp(-cplx(1, 1) * t); }, th, std::vector<DecayHint>{DecayHint::exponential(0.5)});
    CHECK(rel(r.value, 1.0 / cplx(1, 1)) < 1e-11);
}

TEST_CASE("finite intervals", "[quadrature]") {
    CHECK(rel(integrate_interval([](double s) { return cplx(s); }, 0.0, 1.0).value, 0.5) < 1e-14);
    CHECK(rel(integrate_interval([](double s) { return cplx(std::pow(1.0 - s, -0.5)); }, 0.0, 1.0, {}, {0.0, -0.5}).value, 2.0) < 1e-11);
    CHECK(rel(integrate_interval([](double s) { return std::exp(cplx(0, s)); }, 0.0, pi).value, cplx(0, 2)) < 1e-13);
    CHECK_THROWS_AS(integrate_interval([](double s) { return cplx(s); }, 1.0, 0.0), ContractError);
}

TEST_CASE("non-finite integrands are reported", "[quadrature]") {
    CHECK_THROWS(integrate_halfline([](double) { return cplx(NAN); }, {DecayHint::exponential(1.0)}));
}

TEST_CASE("substitution invariance", "[quadrature]") {
    const Kernel b = Kernel::b(0.3, 1.0);
    auto r1 = integrate_halfline([&](double t) { return b.value(t); }, {DecayHint::essential_at_zero(0.25), DecayHint::algebraic(1.3)},
                                 {1e-12});
    auto r2 = integrate_halfline([&](double s) { return b.value(1.0 / s) / (s * s); },
                                 {DecayHint::algebraic_at_zero(-0.7), DecayHint::exponential(0.25)}, {1e-12});
    CHECK(rel(r1.value, r2.value) < 1e-9);
}

TEST_CASE("Richardson extrapolation", "[quadrature]") {
    std::vector<ExtrapolationSample<cplx>> lin, ex;
    for (int k = 0; k < 8; ++k) {
        const double y = 0.5 * std::pow(0.7, k);
        lin.push_back({y, 2.0 + y});
        ex.push_back({y, std::exp(-y)});
    }
    CHECK(rel(richardson_limit<cplx>(std::span<const ExtrapolationSample<cplx>>(lin), 1.0).limit, 2.0) < 1e-13);
    CHECK(rel(richardson_limit<cplx>(std::span<const ExtrapolationSample<cplx>>(ex), 1.0).limit, 1.0) < 1e-10);

    // scalar extension derivative: u'(y) = -e^{-y} -> -1
    std::vector<ExtrapolationSample<cplx>> d;
    for (int k = 0; k < 10; ++k) {
        const double y = 0.5 * std::pow(0.7, k);
        d.push_back({y, -std::exp(-y)});
    }
    CHECK(rel(richardson_limit<cplx>(std::span<const ExtrapolationSample<cplx>>(d), 1.0).limit, -1.0) < 1e-10);

    std::vector<ExtrapolationSample<cplx>> two(lin.begin(), lin.begin() + 2);
    CHECK_THROWS_AS(richardson_limit<cplx>(std::span<const ExtrapolationSample<cplx>>(two), 1.0), ContractError);
}

TEST_CASE("Richardson with a general exponent ladder", "[quadrature]") {
    // L + c1 y^{0.6} + c2 y^2
    const std::vector<cplx> ex{0.6, 2.0, 2.6, 4.0};
    std::vector<ExtrapolationSample<cplx>> s;
    for (int k = 0; k < 8; ++k) {
        const double y = 0.5 * std::pow(0.7, k);
        s.push_back({y, 3.0 - 2.0 * std::pow(y, 0.6) + 0.5 * y * y});
    }
    auto r = richardson_limit<cplx>(std::span<const ExtrapolationSample<cplx>>(s), std::span<const cplx>(ex));
    CHECK(rel(r.limit, 3.0) < 1e-11);
}

TEST_CASE("exact breakpoints at kinks", "[quadrature]") {
    // int |1 - t| e^{-t} = 2/e
    auto r = integrate_halfline([](double t) { return cplx(std::abs(1.0 - t) * std::exp(-t)); },
                                {DecayHint::exponential(1.0), DecayHint::kink(1.0)});
    CHECK(rel(r.value, 2.0 / std::exp(1.0)) < 1e-11);
}
