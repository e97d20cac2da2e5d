#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fracext/fracext.hpp"
#include "oracle_values.hpp"

namespace support {

using namespace fracext;

inline double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

inline Vec to_vec(const std::vector<cplx>& v) {
    Vec out(Eigen::Index(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(Eigen::Index(i)) = v[i];
    return out;
}

// f_j = cos(j) + 1/2, j = 1..8 (matches the oracle generator)
inline Vec f8() {
    Vec f(8);
    for (int j = 1; j <= 8; ++j) f(j - 1) = std::cos(double(j)) + 0.5;
    return f;
}

// f_j = cos(j) + i sin(2j), j = 1..8
inline Vec f8_complex() {
    Vec f(8);
    for (int j = 1; j <= 8; ++j) f(j - 1) = cplx(std::cos(double(j)), std::sin(2.0 * j));
    return f;
}

inline Vec airy_datum() {
    Vec f(4);
    f << cplx(1, 1), 2.0, -1.0, cplx(0, 0.5);
    return f;
}

inline LinearOperator laplacian8() { return build_laplacian_1d(8, 1.0, Boundary::dirichlet); }
inline LinearOperator airy() { return build_fourier_multiplier(named_symbol("i*xi^3"), {-2, -1, 1, 2}); }
inline LinearOperator scalar(cplx a) { return LinearOperator::diagonal(Vec::Constant(1, a)); }

}  // namespace support
