#pragma once

#include <algorithm>

#include "gpolar/matcore.hpp"

namespace gpolar {

/// Generalized (canonical) polar factors A = U H with N(U) = N(A).
struct PolarFactors {
    ComplexMatrix U;   // m x n partial isometry
    ComplexMatrix H;   // n x n Hermitian PSD, equals |A|
    Index rank = 0;
};

/// Scaled residuals of the identities every generalized polar pair satisfies.
/// Each entry is a Frobenius norm divided by (1 + ||A||_F).
struct PolarResiduals {
    double factorization = 0.0;     // A - U H
    double partial_isometry = 0.0;  // U U* U - U
    double domain_projector = 0.0;  // U* U - A^+ A
    double range_projector = 0.0;   // U U* - A A^+
    double hermitian = 0.0;         // H - H*

    double max() const {
        return std::max({factorization, partial_isometry, domain_projector, range_projector,
                         hermitian});
    }
};

/// Computes the generalized polar decomposition from a full SVD
/// A = P diag(S_r, 0) Q*: U = P_r Q_r*, H = Q_r S_r Q_r*.
/// Works for any shape and rank, including the zero matrix.
inline PolarFactors generalized_polar(const ComplexMatrix& A) {
    const SvdFactors f = svd(A);
    const Index r = f.rank;
    PolarFactors out;
    out.rank = r;
    out.U = ComplexMatrix::Zero(A.rows(), A.cols());
    out.H = ComplexMatrix::Zero(A.cols(), A.cols());
    if (r > 0) {
        const auto Pr = f.P.leftCols(r);
        const auto Qr = f.Q.leftCols(r);
        out.U.noalias() = Pr * Qr.adjoint();
        out.H = hermitian_part(Qr * f.sigma.head(r).asDiagonal() * Qr.adjoint());
    }
    return out;
}

/// Report-only check: never throws for inconsistent factors, only for shapes.
inline PolarResiduals verify_polar(const ComplexMatrix& A, const PolarFactors& f) {
    if (f.U.rows() != A.rows() || f.U.cols() != A.cols()) {
        throw ShapeMismatch("verify_polar: U must have the shape of A");
    }
    if (f.H.rows() != A.cols() || f.H.cols() != A.cols()) {
        throw ShapeMismatch("verify_polar: H must be n x n with n = cols(A)");
    }
    const double scale = 1.0 + frobenius_norm(A);
    const ComplexMatrix Ap = pinv(A);
    const ComplexMatrix& U = f.U;
    PolarResiduals r;
    r.factorization = frobenius_norm(A - U * f.H) / scale;
    r.partial_isometry = frobenius_norm(U * U.adjoint() * U - U) / scale;
    r.domain_projector = frobenius_norm(U.adjoint() * U - Ap * A) / scale;
    r.range_projector = frobenius_norm(U * U.adjoint() - A * Ap) / scale;
    r.hermitian = frobenius_norm(f.H - f.H.adjoint()) / scale;
    return r;
}

} // namespace gpolar
