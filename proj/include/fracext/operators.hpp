#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"

namespace fracext {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr int kMaxDimension = 64;

// Finite-dimensional generator A: a dense matrix or a diagonal multiplier.
class LinearOperator {
public:
    enum class Kind { dense, diagonal };

    static LinearOperator dense(Mat m) {
        if (m.rows() != m.cols() || m.rows() == 0) throw ContractError("LinearOperator: matrix must be square and nonempty");
        if (m.rows() > kMaxDimension) throw ContractError("LinearOperator: dimension above the desk-scale cap of 64");
        LinearOperator op;
        op.kind_ = Kind::dense;
        op.mat_ = std::move(m);
        return op;
    }
    static LinearOperator diagonal(Vec d) {
        if (d.size() == 0) throw ContractError("LinearOperator: empty diagonal");
        if (d.size() > kMaxDimension) throw ContractError("LinearOperator: dimension above the desk-scale cap of 64");
        LinearOperator op;
        op.kind_ = Kind::diagonal;
        op.diag_ = std::move(d);
        return op;
    }

    Kind kind() const { return kind_; }
    Eigen::Index dimension() const { return kind_ == Kind::dense ? mat_.rows() : diag_.size(); }
    const Mat& matrix() const { return mat_; }
    const Vec& diagonal_values() const { return diag_; }

    Mat to_dense() const {
        if (kind_ == Kind::dense) return mat_;
        return diag_.asDiagonal();
    }

    Vec apply(const Vec& f) const {
        if (f.size() != dimension()) throw ContractError("apply: dimension mismatch");
        if (kind_ == Kind::dense) return mat_ * f;
        return diag_.cwiseProduct(f);
    }

    // Spectral norm.
    double norm() const {
        if (kind_ == Kind::diagonal) return diag_.cwiseAbs().maxCoeff();
        Eigen::JacobiSVD<Mat> svd(mat_);
        return svd.singularValues()(0);
    }

    bool is_self_adjoint(double rel_tol = 1e-12) const {
        if (kind_ == Kind::diagonal) return (diag_.imag().cwiseAbs().maxCoeff() <= rel_tol * std::max(1.0, norm()));
        return (mat_ - mat_.adjoint()).norm() <= rel_tol * std::max(1.0, mat_.norm());
    }

private:
    LinearOperator() = default;
    Kind kind_ = Kind::diagonal;
    Mat mat_;
    Vec diag_;
};

inline Vec apply(const LinearOperator& op, const Vec& f) { return op.apply(f); }

struct SpectralDecomposition {
    Vec eigenvalues;
    Mat basis;
    Mat inverse_basis;
    bool unitary = false;

    // basis * diag(g(lambda)) * inverse_basis * f
    template <class G>
    Vec apply_function(const G& g, const Vec& f) const {
        Vec c = inverse_basis * f;
        for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= g(eigenvalues(k));
        return basis * c;
    }
    Vec apply_diagonal(const Vec& d, const Vec& f) const { return basis * d.cwiseProduct(inverse_basis * f); }
};

inline SpectralDecomposition spectral_decompose(const LinearOperator& op) {
    SpectralDecomposition sd;
    const Eigen::Index n = op.dimension();
    if (op.kind() == LinearOperator::Kind::diagonal) {
        sd.eigenvalues = op.diagonal_values();
        sd.basis = Mat::Identity(n, n);
        sd.inverse_basis = Mat::Identity(n, n);
        sd.unitary = true;
        return sd;
    }
    const Mat& A = op.matrix();
    const double scale = std::max(op.norm(), 1e-300);
    if (op.is_self_adjoint()) {
        Mat H = 0.5 * (A + A.adjoint());
        Eigen::SelfAdjointEigenSolver<Mat> es(H);
        if (es.info() != Eigen::Success) throw DefectiveError("spectral_decompose: Hermitian eigensolver failed");
        sd.eigenvalues = es.eigenvalues().cast<cplx>();
        sd.basis = es.eigenvectors();
        sd.inverse_basis = sd.basis.adjoint();
        sd.unitary = true;
    } else {
        Eigen::ComplexEigenSolver<Mat> es(A);
        if (es.info() != Eigen::Success) throw DefectiveError("spectral_decompose: eigensolver failed");
        sd.eigenvalues = es.eigenvalues();
        sd.basis = es.eigenvectors();
        Eigen::JacobiSVD<Mat> svd(sd.basis);
        const auto& sv = svd.singularValues();
        const double cond = sv(0) / std::max(sv(sv.size() - 1), 1e-300);
        if (cond > 1e10) {
            std::ostringstream os;
            os << "spectral_decompose: eigenvector basis is numerically singular (condition " << cond
               << "); matrix is defective within tolerance";
            throw DefectiveError(os.str());
        }
        sd.inverse_basis = sd.basis.inverse();
    }
    const Mat rec = sd.basis * sd.eigenvalues.asDiagonal() * sd.inverse_basis;
    if ((rec - op.to_dense()).norm() > 1e-10 * scale * std::sqrt(double(n)))
        throw DefectiveError("spectral_decompose: reconstruction residual above tolerance");
    return sd;
}

// (lambda - A) x = f.
inline Vec resolvent_solve(const LinearOperator& op, cplx lambda, const Vec& f) {
    if (f.size() != op.dimension()) throw ContractError("resolvent_solve: dimension mismatch");
    if (op.kind() == LinearOperator::Kind::diagonal) {
        Vec d = lambda - op.diagonal_values().array();
        if ((d.array() == cplx(0)).any()) throw DomainError("resolvent_solve: lambda is an eigenvalue (singular system)");
        return f.cwiseQuotient(d);
    }
    const Eigen::Index n = op.dimension();
    Mat M = lambda * Mat::Identity(n, n) - op.matrix();
    Eigen::FullPivLU<Mat> lu(M);
    if (!lu.isInvertible()) throw DomainError("resolvent_solve: lambda is an eigenvalue (singular system)");
    Vec x = lu.solve(f);
    const double res = (M * x - f).norm();
    if (res > 1e-11 * (std::abs(lambda) + op.norm()) * std::max(x.norm(), 1e-300) + 1e-14 * f.norm())
        throw DomainError("resolvent_solve: residual above tolerance (ill-conditioned system)");
    return x;
}

enum class Boundary { dirichlet, periodic };

inline LinearOperator build_laplacian_1d(int n, double h, Boundary bc) {
    if (n < 2) throw ContractError("build_laplacian_1d: n must be at least 2");
    if (!(h > 0)) throw ContractError("build_laplacian_1d: spacing must be positive");
    Mat A = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        A(i, i) = -2.0;
        if (i + 1 < n) A(i, i + 1) += 1.0;
        if (i > 0) A(i, i - 1) += 1.0;
    }
    if (bc == Boundary::periodic) {
        A(0, n - 1) += 1.0;
        A(n - 1, 0) += 1.0;
    }
    return LinearOperator::dense(A / (h * h));
}

inline LinearOperator build_fourier_multiplier(const std::function<cplx(double)>& symbol,
                                               const std::vector<double>& modes, bool tempered = true) {
    if (modes.empty()) throw ContractError("build_fourier_multiplier: no modes");
    Vec d(Eigen::Index(modes.size()));
    for (std::size_t k = 0; k < modes.size(); ++k) {
        d(Eigen::Index(k)) = symbol(modes[k]);
        if (tempered && d(Eigen::Index(k)).real() > 1e-14) {
            std::ostringstream os;
            os << "build_fourier_multiplier: symbol value " << d(Eigen::Index(k)) << " at mode " << modes[k]
               << " has positive real part (not a tempered generator)";
            throw DomainError(os.str());
        }
    }
    return LinearOperator::diagonal(d);
}

// Named symbols used by the CLI.
inline std::function<cplx(double)> named_symbol(const std::string& name) {
    if (name == "i*xi^3") return [](double x) { return cplx(0, x * x * x); };
    if (name == "-xi^2") return [](double x) { return cplx(-x * x, 0); };
    if (name == "i*xi") return [](double x) { return cplx(0, x); };
    throw ContractError("unknown symbol '" + name + "' (known: i*xi^3, -xi^2, i*xi)");
}

inline Vec random_vector(Eigen::Index n, unsigned long long seed, bool complex_entries = false) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_entries ? cplx(nd(rng), nd(rng)) : cplx(nd(rng), 0.0);
    return v / v.norm();
}

// Random Hermitian negative-definite matrix with spectrum in [-spread, -floor].
inline LinearOperator random_negative_hermitian(int n, unsigned long long seed, double floor = 0.2, double spread = 4.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_real_distribution<double> ud(floor, spread);
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = cplx(nd(rng), nd(rng));
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ();
    Vec d(n);
    for (int i = 0; i < n; ++i) d(i) = -ud(rng);
    Mat A = Q * d.asDiagonal() * Q.adjoint();
    A = 0.5 * (A + A.adjoint());
    return LinearOperator::dense(A);
}

}  // namespace fracext
