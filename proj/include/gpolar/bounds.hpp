#pragma once

// Frobenius-norm bounds for the solution X of A X + X B = A C + D B.
//
//   bound_lrc    sqrt(||C||^2 + ||D||^2) / eta        (general Hermitian, disjoint spectra)
//   bound_naive  sqrt(||C||^2 + ||D||^2)              (positive definite A, B)
//   bounds_pm    (||C+D|| -/+ ||C-D||) / 2
//   bounds_abc   (||aC+bD|| -/+ c ||C-D||) / (a+b)
//   bounds_mu    (||C+D|| -/+ mu ||C-D||) / 2
//
// Lower bounds may be negative and are returned as computed.

#include <algorithm>
#include <cmath>
#include <span>

#include "gpolar/matcore.hpp"

namespace gpolar {

// |omega - gamma| <= kOverlapTol * max|spectrum| counts as intersecting spectra.
inline constexpr double kOverlapTol = 1e-12;

struct SpectralSeparation {
    double eta = 0.0;
};

enum class BoundKind { PM, ABC, MU };

struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
    BoundKind kind = BoundKind::PM;
};

struct AbcParams {
    double lambda1 = 1.0;   // ||A^+||_2 ||B||_2
    double lambda2 = 1.0;   // ||A||_2 ||B^+||_2
    double a = 2.0;
    double b = 2.0;
    double c = 0.0;
};

struct MuParams {
    double lambda = 1.0;
    double mu = 0.0;
};

/// Spectral norms of a Hermitian PSD matrix and of its pseudoinverse.
struct PsdNorms {
    double norm = 0.0;
    double pinv_norm = 0.0;
};

inline SpectralSeparation eta(std::span<const double> spec_omega, std::span<const double> spec_gamma) {
    if (spec_omega.empty() || spec_gamma.empty()) {
        throw DomainError("eta: spectra must be nonempty");
    }
    double scale = 0.0;
    for (double w : spec_omega) scale = std::max(scale, std::abs(w));
    for (double g : spec_gamma) scale = std::max(scale, std::abs(g));

    double best = std::numeric_limits<double>::infinity();
    for (double w : spec_omega) {
        for (double g : spec_gamma) {
            const double gap = std::abs(w - g);
            if (!(gap > kOverlapTol * scale)) {
                throw NoUniqueSolution("eta: spectra intersect, separation undefined");
            }
            best = std::min(best, gap / std::hypot(w, g));
        }
    }
    return {best};
}

inline SpectralSeparation eta(const RealVector& spec_omega, const RealVector& spec_gamma) {
    return eta(std::span<const double>(spec_omega.data(), static_cast<std::size_t>(spec_omega.size())),
               std::span<const double>(spec_gamma.data(), static_cast<std::size_t>(spec_gamma.size())));
}

inline double bound_lrc(const ComplexMatrix& C, const ComplexMatrix& D, SpectralSeparation sep) {
    require_same_shape(C, D, "bound_lrc");
    if (!(sep.eta > 0.0)) {
        throw DomainError("bound_lrc: eta must be positive");
    }
    return std::sqrt(frobenius_norm_squared(C) + frobenius_norm_squared(D)) / sep.eta;
}

inline double bound_naive(const ComplexMatrix& C, const ComplexMatrix& D) {
    require_same_shape(C, D, "bound_naive");
    return std::sqrt(frobenius_norm_squared(C) + frobenius_norm_squared(D));
}

inline BoundPair bounds_pm(const ComplexMatrix& C, const ComplexMatrix& D) {
    require_same_shape(C, D, "bounds_pm");
    const double sum = frobenius_norm(C + D);
    const double diff = frobenius_norm(C - D);
    return {(sum - diff) / 2.0, (sum + diff) / 2.0, BoundKind::PM};
}

/// Norms from the ascending spectrum of a Hermitian PSD matrix; eigenvalues at or
/// below the rank cutoff are treated as zero.
inline PsdNorms psd_norms_from_spectrum(const RealVector& ascending) {
    const Index n = ascending.size();
    const double top = n > 0 ? ascending(n - 1) : 0.0;
    const double cut = default_rank_tolerance(n, n, std::max(top, 0.0));
    if (!(top > cut)) {
        throw DomainError("bound coefficients: matrix must be nonzero");
    }
    double smallest = top;
    for (Index i = 0; i < n; ++i) {
        if (ascending(i) > cut) {
            smallest = std::min(smallest, ascending(i));
        }
    }
    return {top, 1.0 / smallest};
}

inline PsdNorms psd_norms(const ComplexMatrix& H, const char* what) {
    return psd_norms_from_spectrum(psd_eigh(H, what).lambda);
}

inline AbcParams abc_params_from_norms(PsdNorms a_norms, PsdNorms b_norms) {
    AbcParams p;
    p.lambda1 = a_norms.pinv_norm * b_norms.norm;
    p.lambda2 = a_norms.norm * b_norms.pinv_norm;
    p.a = 1.0 + 1.0 / p.lambda1;
    p.b = 1.0 + 1.0 / p.lambda2;
    p.c = std::sqrt(std::max(0.0, 1.0 - 1.0 / (p.lambda1 * p.lambda2)));
    return p;
}

/// Coefficients of the (a, b, c) sandwich for nonzero Hermitian PSD A, B.
inline AbcParams abc_params(const ComplexMatrix& A, const ComplexMatrix& B) {
    return abc_params_from_norms(psd_norms(A, "abc_params A"), psd_norms(B, "abc_params B"));
}

inline MuParams mu_from_lambda(double lambda) {
    MuParams p;
    p.lambda = std::max(1.0, lambda);
    p.mu = std::sqrt((p.lambda - 1.0) / (p.lambda + 1.0));
    return p;
}

inline MuParams mu_params_from_norms(PsdNorms a_norms, PsdNorms b_norms) {
    return mu_from_lambda(std::max(a_norms.pinv_norm * b_norms.norm, a_norms.norm * b_norms.pinv_norm));
}

inline MuParams mu_params(const ComplexMatrix& A, const ComplexMatrix& B) {
    return mu_params_from_norms(psd_norms(A, "mu_params A"), psd_norms(B, "mu_params B"));
}

inline BoundPair bounds_abc(const ComplexMatrix& C, const ComplexMatrix& D, const AbcParams& p) {
    require_same_shape(C, D, "bounds_abc");
    const double weighted = frobenius_norm(p.a * C + p.b * D);
    const double spread = p.c * frobenius_norm(C - D);
    const double denom = p.a + p.b;
    return {(weighted - spread) / denom, (weighted + spread) / denom, BoundKind::ABC};
}

inline BoundPair bounds_mu(const ComplexMatrix& C, const ComplexMatrix& D, const MuParams& p) {
    require_same_shape(C, D, "bounds_mu");
    const double sum = frobenius_norm(C + D);
    const double spread = p.mu * frobenius_norm(C - D);
    return {(sum - spread) / 2.0, (sum + spread) / 2.0, BoundKind::MU};
}

} // namespace gpolar
