#pragma once

// Dense complex matrix foundation: norms, SVD, Hermitian eigendecomposition,
// Moore-Penrose pseudoinverse, PSD square root and range projectors.
//
// All functions are pure. Tolerances are relative to the input's scale unless
// stated otherwise.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "gpolar/errors.hpp"

namespace gpolar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// ||H - H*||_F <= kHermitianTol * ||H||_F counts as Hermitian.
inline constexpr double kHermitianTol = 1e-10;

// Eigenvalues down to -kPsdTol * ||H||_2 are treated as round-off and clamped.
inline constexpr double kPsdTol = 1e-10;

struct SvdFactors {
    ComplexMatrix P;     // m x m unitary
    RealVector sigma;    // min(m, n), nonincreasing
    ComplexMatrix Q;     // n x n unitary
    Index rank = 0;      // #{sigma_i > tolerance}
    double tolerance = 0.0;
};

struct EighFactors {
    ComplexMatrix Q;     // n x n unitary
    RealVector lambda;   // ascending
};

inline ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

inline bool all_finite(const ComplexMatrix& M) { return M.allFinite(); }

inline void require_finite(const ComplexMatrix& M, const char* what) {
    if (!M.allFinite()) {
        throw DomainError(std::string(what) + ": matrix has non-finite entries");
    }
}

inline void require_same_shape(const ComplexMatrix& X, const ComplexMatrix& Y, const char* what) {
    if (X.rows() != Y.rows() || X.cols() != Y.cols()) {
        throw ShapeMismatch(std::string(what) + ": " + std::to_string(X.rows()) + "x" +
                            std::to_string(X.cols()) + " vs " + std::to_string(Y.rows()) + "x" +
                            std::to_string(Y.cols()));
    }
}

inline void require_square(const ComplexMatrix& M, const char* what) {
    if (M.rows() != M.cols()) {
        throw ShapeMismatch(std::string(what) + ": expected a square matrix, got " +
                            std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
    }
}

// Squares are accumulated in long double and rounded once, so the result does not
// depend on the vectorized summation order Eigen picks for real vs complex storage.
inline long double frobenius_norm_squared_ld(const ComplexMatrix& M) {
    long double sum = 0.0L;
    for (Index j = 0; j < M.cols(); ++j) {
        for (Index i = 0; i < M.rows(); ++i) {
            const long double re = M(i, j).real();
            const long double im = M(i, j).imag();
            sum += re * re + im * im;
        }
    }
    return sum;
}

inline double frobenius_norm_squared(const ComplexMatrix& M) {
    return static_cast<double>(frobenius_norm_squared_ld(M));
}

inline double frobenius_norm(const ComplexMatrix& M) {
    return static_cast<double>(std::sqrt(frobenius_norm_squared_ld(M)));
}

inline Complex trace(const ComplexMatrix& M) { return M.trace(); }

inline double spectral_norm(const ComplexMatrix& M) {
    if (M.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(M);
    if (svd.info() != Eigen::Success) {
        throw NumericalFailure("spectral_norm: SVD did not converge");
    }
    return svd.singularValues()(0);
}

// Cutoff used when a caller passes tol = 0.
inline double default_rank_tolerance(Index rows, Index cols, double sigma_max) {
    return static_cast<double>(std::max(rows, cols)) * kEps * sigma_max;
}

inline SvdFactors svd(const ComplexMatrix& M, double tol = 0.0) {
    require_finite(M, "svd");
    if (tol < 0.0) {
        throw DomainError("svd: negative tolerance");
    }
    Eigen::JacobiSVD<ComplexMatrix> dec(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.info() != Eigen::Success || !dec.singularValues().allFinite()) {
        throw NumericalFailure("svd: decomposition did not converge");
    }
    SvdFactors out;
    out.P = dec.matrixU();
    out.Q = dec.matrixV();
    out.sigma = dec.singularValues();
    const double sigma_max = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
    out.tolerance = tol > 0.0 ? tol : default_rank_tolerance(M.rows(), M.cols(), sigma_max);
    out.rank = 0;
    for (Index i = 0; i < out.sigma.size(); ++i) {
        if (out.sigma(i) > out.tolerance) {
            ++out.rank;
        }
    }
    return out;
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& H) {
    return (H + H.adjoint()) * 0.5;
}

inline bool is_hermitian(const ComplexMatrix& H, double tol = kHermitianTol) {
    if (H.rows() != H.cols()) {
        return false;
    }
    return frobenius_norm(H - H.adjoint()) <= tol * frobenius_norm(H);
}

// Eigendecomposition of a Hermitian matrix. The input is symmetrized first.
inline EighFactors eigh(const ComplexMatrix& H) {
    require_square(H, "eigh");
    require_finite(H, "eigh");
    if (!is_hermitian(H)) {
        throw DomainError("eigh: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> dec(hermitian_part(H));
    if (dec.info() != Eigen::Success) {
        throw NumericalFailure("eigh: eigensolver did not converge");
    }
    return {dec.eigenvectors(), dec.eigenvalues()};
}

inline ComplexMatrix pinv_from_svd(const SvdFactors& f) {
    const Index r = f.rank;
    ComplexMatrix out = ComplexMatrix::Zero(f.Q.rows(), f.P.rows());
    if (r == 0) {
        return out;
    }
    const RealVector inv_sigma = f.sigma.head(r).cwiseInverse();
    out.noalias() = f.Q.leftCols(r) * inv_sigma.asDiagonal() * f.P.leftCols(r).adjoint();
    return out;
}

inline ComplexMatrix pinv(const ComplexMatrix& M, double tol = 0.0) {
    return pinv_from_svd(svd(M, tol));
}

// Hermitian PSD square root. Eigenvalues in [-tol*||H||_2, 0) are clamped to 0, and
// nonnegative ones at or below the rank cutoff n*eps*||H||_2 are dropped too: a
// Gram matrix G*G of rank r carries O(eps*||H||) noise in its null space, whose
// square root would otherwise leak O(sqrt(eps)) into the result.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& H, double tol = kPsdTol) {
    require_square(H, "psd_sqrt");
    require_finite(H, "psd_sqrt");
    if (!is_hermitian(H)) {
        throw DomainError("psd_sqrt: matrix is not Hermitian");
    }
    if (H.size() == 0) {
        return H;
    }
    const EighFactors e = eigh(H);
    const double scale = std::max(std::abs(e.lambda(0)), std::abs(e.lambda(e.lambda.size() - 1)));
    if (e.lambda(0) < -tol * scale) {
        throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(e.lambda(0)) +
                          " is below the PSD tolerance");
    }
    const double cut = default_rank_tolerance(H.rows(), H.cols(), scale);
    const RealVector root = e.lambda.unaryExpr([cut](double l) { return l > cut ? std::sqrt(l) : 0.0; });
    return hermitian_part(e.Q * root.asDiagonal() * e.Q.adjoint());
}

// Eigendecomposition of a Hermitian matrix that must also be PSD up to kPsdTol.
inline EighFactors psd_eigh(const ComplexMatrix& H, const char* what) {
    require_square(H, what);
    require_finite(H, what);
    if (!is_hermitian(H)) {
        throw DomainError(std::string(what) + ": matrix is not Hermitian");
    }
    EighFactors e = eigh(H);
    if (e.lambda.size() > 0) {
        const double scale = std::max(std::abs(e.lambda(0)), e.lambda(e.lambda.size() - 1));
        if (e.lambda(0) < -kPsdTol * scale) {
            throw NotPsdError(std::string(what) + ": matrix is not positive semi-definite");
        }
    }
    return e;
}

// Orthogonal projector onto R(M), i.e. M M^+.
inline ComplexMatrix range_projector(const ComplexMatrix& M, double tol = 0.0) {
    return M * pinv(M, tol);
}

} // namespace gpolar
