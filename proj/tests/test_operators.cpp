#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace support;

namespace {

std::vector<double> sorted_real_eigs(const LinearOperator& A) {
    const auto sd = spectral_decompose(A);
    std::vector<double> e;
    for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) e.push_back(sd.eigenvalues(k).real());
    std::sort(e.begin(), e.end());
    return e;
}

}  // namespace

TEST_CASE("1D Laplacian", "[operators]") {
    const auto A = build_laplacian_1d(3, 1.0, Boundary::dirichlet);
    Mat want(3, 3);
    want << -2, 1, 0, 1, -2, 1, 0, 1, -2;
    CHECK((A.to_dense() - want).norm() < 1e-15);
    const auto e = sorted_real_eigs(A);
    CHECK(std::abs(e[0] + 2 + std::sqrt(2.0)) < 1e-13);
    CHECK(std::abs(e[1] + 2) < 1e-13);
    CHECK(std::abs(e[2] + 2 - std::sqrt(2.0)) < 1e-13);

    const auto p = sorted_real_eigs(build_laplacian_1d(2, 1.0, Boundary::periodic));
    CHECK(std::abs(p[0] + 4) < 1e-13);
    CHECK(std::abs(p[1]) < 1e-13);

    CHECK((build_laplacian_1d(2, 0.5, Boundary::dirichlet).to_dense() - 4.0 * build_laplacian_1d(2, 1.0, Boundary::dirichlet).to_dense())
              .norm() < 1e-14);
    CHECK(A.is_self_adjoint());
}

TEST_CASE("Fourier multipliers", "[operators]") {
    const auto A = build_fourier_multiplier(named_symbol("i*xi^3"), {-1, 0, 1}, false);
    CHECK(A.kind() == LinearOperator::Kind::diagonal);
    CHECK(A.diagonal_values()(0) == cplx(0, -1));
    CHECK(A.diagonal_values()(1) == cplx(0, 0));
    CHECK(A.diagonal_values()(2) == cplx(0, 1));
    const auto B = build_fourier_multiplier(named_symbol("-xi^2"), {1, 2});
    CHECK(B.diagonal_values()(0) == cplx(-1));
    CHECK(B.diagonal_values()(1) == cplx(-4));
    const auto C = build_fourier_multiplier(named_symbol("i*xi"), {pi});
    CHECK(rel(C.diagonal_values()(0), cplx(0, pi)) < 1e-15);
    const Vec one = Vec::Ones(1);
    CHECK(verify_resolvent(integrated_semigroup(C, 1.0), 1.0, one) < 1e-8);
    CHECK_THROWS_AS(named_symbol("xi^5"), ContractError);
}

TEST_CASE("spectral decomposition", "[operators]") {
    const auto d = spectral_decompose(LinearOperator::diagonal((Vec(2) << -1.0, -2.0).finished()));
    CHECK(d.eigenvalues(0) == cplx(-1));
    CHECK(d.eigenvalues(1) == cplx(-2));
    CHECK((d.basis - Mat::Identity(2, 2)).norm() == 0.0);
    for (unsigned long long seed : {1ull, 2ull, 3ull}) {
        const auto H = random_negative_hermitian(8, seed);
        const auto sd = spectral_decompose(H);
        CHECK((sd.basis * sd.eigenvalues.asDiagonal() * sd.inverse_basis - H.to_dense()).norm() / H.norm() < 1e-10);
        for (Eigen::Index k = 0; k < 8; ++k) CHECK(sd.eigenvalues(k).real() < 0);
    }
}

TEST_CASE("defective operators are rejected", "[operators]") {
    Mat j(2, 2);
    j << -1, 1, 0, -1;
    CHECK_THROWS_AS(spectral_decompose(LinearOperator::dense(j)), DefectiveError);
}

TEST_CASE("apply and resolvent", "[operators]") {
    const auto D = LinearOperator::diagonal((Vec(2) << -1.0, -2.0).finished());
    const Vec r = fracext::apply(D, Vec::Ones(2));
    CHECK(r(0) == cplx(-1));
    CHECK(r(1) == cplx(-2));
    CHECK(rel(resolvent_solve(scalar(-1.0), 1.0, Vec::Ones(1))(0), 0.5) < 1e-15);
    const auto A = laplacian8();
    const Vec f = f8();
    const cplx l(0.7, 0.3), m(2.0, -1.0);
    const Vec lhs = resolvent_solve(A, l, f) - resolvent_solve(A, m, f);
    const Vec rhs = (m - l) * resolvent_solve(A, l, resolvent_solve(A, m, f));
    CHECK(relative_residual(lhs, rhs) < 1e-12);
}

TEST_CASE("contract checks", "[operators]") {
    CHECK_THROWS_AS(LinearOperator::dense(Mat::Zero(2, 3)), ContractError);
    CHECK_THROWS_AS(LinearOperator::dense(Mat::Zero(65, 65)), ContractError);
    CHECK_THROWS_AS(fracext::apply(laplacian8(), Vec::Ones(3)), ContractError);
    CHECK_THROWS_AS(build_fourier_multiplier(named_symbol("-xi^2"), {}), ContractError);
}

TEST_CASE("random vectors are reproducible", "[operators]") {
    CHECK((random_vector(8, 5) - random_vector(8, 5)).norm() == 0.0);
    CHECK((random_vector(8, 5) - random_vector(8, 6)).norm() > 0.0);
    CHECK(random_vector(4, 5, true).imag().norm() > 0.0);
}
