#pragma once

// Structured Sylvester equation A X + X B = A C + D B with Hermitian PSD A, B,
// solved on the ranges of A and B by a direct spectral method.

#include <cmath>
#include <string>
#include <utility>

#include "gpolar/matcore.hpp"

namespace gpolar {

inline constexpr double kDefaultSolverTol = 1e-8;
inline constexpr double kRangeTol = 1e-10;

struct RangeConditions {
    bool c_in_range_a = false;    // A^+ A C = C
    bool d_in_corange_b = false;  // D B B^+ = D
    bool c_in_corange_b = false;  // C B B^+ = C
    bool d_in_range_a = false;    // A^+ A D = D

    // Hypotheses of the identity and the (C+D, C-D) sandwich.
    bool basic() const { return c_in_range_a && d_in_corange_b; }
    // Additional hypotheses of the (a, b, c) and (lambda, mu) sandwiches.
    bool full() const { return basic() && c_in_corange_b && d_in_range_a; }
};

struct StructuredProblem {
    ComplexMatrix A;   // m x m Hermitian PSD
    ComplexMatrix B;   // n x n Hermitian PSD
    ComplexMatrix C;   // m x n
    ComplexMatrix D;   // m x n
    ComplexMatrix A_pinv;
    ComplexMatrix B_pinv;
    RangeConditions conditions;
};

struct SylvesterSolution {
    ComplexMatrix X;
    double residual = 0.0;   // ||AX + XB - AC - DB||_F / (1 + ||AC + DB||_F)
    bool range_conforming = false;
};

namespace detail {

inline bool is_fixed_by(const ComplexMatrix& projected, const ComplexMatrix& M) {
    return frobenius_norm(projected - M) <= kRangeTol * (1.0 + frobenius_norm(M));
}

} // namespace detail

/// Validates shapes and PSD-ness of the coefficients and records which range
/// hypotheses hold. Throws ShapeMismatch / DomainError / NotPsdError.
inline StructuredProblem make_structured_problem(ComplexMatrix A, ComplexMatrix B,
                                                 ComplexMatrix C, ComplexMatrix D) {
    require_square(A, "structured problem A");
    require_square(B, "structured problem B");
    require_same_shape(C, D, "structured problem C vs D");
    if (C.rows() != A.rows() || C.cols() != B.rows()) {
        throw ShapeMismatch("structured problem: C, D must be " + std::to_string(A.rows()) + "x" +
                            std::to_string(B.rows()));
    }
    require_finite(C, "structured problem C");
    require_finite(D, "structured problem D");
    psd_eigh(A, "structured problem A");
    psd_eigh(B, "structured problem B");

    StructuredProblem p;
    p.A_pinv = pinv(A);
    p.B_pinv = pinv(B);
    const ComplexMatrix Pa = p.A_pinv * A;
    const ComplexMatrix Pb = B * p.B_pinv;
    p.conditions.c_in_range_a = detail::is_fixed_by(Pa * C, C);
    p.conditions.d_in_corange_b = detail::is_fixed_by(D * Pb, D);
    p.conditions.c_in_corange_b = detail::is_fixed_by(C * Pb, C);
    p.conditions.d_in_range_a = detail::is_fixed_by(Pa * D, D);
    p.A = std::move(A);
    p.B = std::move(B);
    p.C = std::move(C);
    p.D = std::move(D);
    return p;
}

inline bool is_range_conforming(const StructuredProblem& p, const ComplexMatrix& X) {
    return detail::is_fixed_by(p.A_pinv * p.A * X, X) && detail::is_fixed_by(X * p.B * p.B_pinv, X);
}

/// Solves A X + X B = A C + D B for the solution with A^+ A X = X = X B B^+.
///
/// In the joint eigenbasis X~_ij = S~_ij / (lambda_i + mu_j) whenever both
/// eigenvalues exceed the rank cutoff, and 0 otherwise. The residual check turns
/// an inconsistent right-hand side into InconsistentSystem.
inline SylvesterSolution solve_structured(const StructuredProblem& p,
                                          double tol = kDefaultSolverTol) {
    if (!p.conditions.basic()) {
        throw PreconditionError(
            "solve_structured: requires A^+ A C = C and D B B^+ = D");
    }
    const EighFactors ea = eigh(p.A);
    const EighFactors eb = eigh(p.B);
    const Index m = p.A.rows();
    const Index n = p.B.rows();
    const double cut_a = default_rank_tolerance(m, m, std::max(0.0, ea.lambda(m - 1)));
    const double cut_b = default_rank_tolerance(n, n, std::max(0.0, eb.lambda(n - 1)));

    const ComplexMatrix rhs = p.A * p.C + p.D * p.B;
    ComplexMatrix Xt = ea.Q.adjoint() * rhs * eb.Q;
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < m; ++i) {
            const double li = ea.lambda(i);
            const double mj = eb.lambda(j);
            Xt(i, j) = (li > cut_a && mj > cut_b) ? Xt(i, j) / (li + mj) : Complex(0.0, 0.0);
        }
    }

    SylvesterSolution sol;
    sol.X = ea.Q * Xt * eb.Q.adjoint();
    sol.residual = frobenius_norm(p.A * sol.X + sol.X * p.B - rhs) / (1.0 + frobenius_norm(rhs));
    if (!(sol.residual <= tol)) {
        throw InconsistentSystem("solve_structured: residual " + std::to_string(sol.residual) +
                                 " exceeds tolerance; right-hand side is not consistent with "
                                 "a range-conforming solution");
    }
    sol.range_conforming = is_range_conforming(p, sol.X);
    return sol;
}

/// Solves Omega X - X Gamma = S for Hermitian Omega, Gamma with disjoint spectra.
inline ComplexMatrix solve_general_hermitian(const ComplexMatrix& omega, const ComplexMatrix& gamma,
                                             const ComplexMatrix& rhs,
                                             double tol = kDefaultSolverTol) {
    require_square(omega, "solve_general_hermitian Omega");
    require_square(gamma, "solve_general_hermitian Gamma");
    if (rhs.rows() != omega.rows() || rhs.cols() != gamma.rows()) {
        throw ShapeMismatch("solve_general_hermitian: S must be rows(Omega) x rows(Gamma)");
    }
    require_finite(rhs, "solve_general_hermitian S");
    const EighFactors eo = eigh(omega);
    const EighFactors eg = eigh(gamma);
    const Index m = omega.rows();
    const Index n = gamma.rows();

    const double scale = std::max(eo.lambda.cwiseAbs().maxCoeff(), eg.lambda.cwiseAbs().maxCoeff());
    const double cut = default_rank_tolerance(m, n, scale);
    double gap = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < n; ++j) {
            gap = std::min(gap, std::abs(eo.lambda(i) - eg.lambda(j)));
        }
    }
    if (!(gap > cut)) {
        throw NoUniqueSolution("solve_general_hermitian: spectra of Omega and Gamma intersect");
    }

    ComplexMatrix Xt = eo.Q.adjoint() * rhs * eg.Q;
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < m; ++i) {
            Xt(i, j) /= (eo.lambda(i) - eg.lambda(j));
        }
    }
    ComplexMatrix X = eo.Q * Xt * eg.Q.adjoint();
    const double residual = frobenius_norm(omega * X - X * gamma - rhs);
    if (!(residual <= tol * (1.0 + frobenius_norm(rhs)))) {
        throw InconsistentSystem("solve_general_hermitian: residual " + std::to_string(residual) +
                                 " exceeds tolerance");
    }
    return X;
}

/// The four terms of the orthogonal splitting of ||D - C||_F^2 for a
/// range-conforming solution X.
struct SplittingTerms {
    double lhs = 0.0;            // ||D - C||^2
    double d_minus_x = 0.0;      // ||D - X||^2
    double x_minus_c = 0.0;      // ||X - C||^2
    double weighted_xc = 0.0;    // ||A^{1/2} (X - C) (B^+)^{1/2}||^2
    double weighted_dx = 0.0;    // ||(A^+)^{1/2} (D - X) B^{1/2}||^2

    double rhs() const { return d_minus_x + x_minus_c + weighted_xc + weighted_dx; }
};

inline SplittingTerms splitting_terms(const StructuredProblem& p, const SylvesterSolution& sol) {
    if (!p.conditions.basic()) {
        throw PreconditionError("splitting identity: requires A^+ A C = C and D B B^+ = D");
    }
    if (!sol.range_conforming) {
        throw PreconditionError("splitting identity: solution is not range-conforming");
    }
    require_same_shape(sol.X, p.C, "splitting identity X vs C");
    const ComplexMatrix a_half = psd_sqrt(p.A);
    const ComplexMatrix b_half = psd_sqrt(p.B);
    const ComplexMatrix a_pinv_half = psd_sqrt(hermitian_part(p.A_pinv));
    const ComplexMatrix b_pinv_half = psd_sqrt(hermitian_part(p.B_pinv));
    const ComplexMatrix& X = sol.X;

    SplittingTerms t;
    t.lhs = frobenius_norm_squared(p.D - p.C);
    t.d_minus_x = frobenius_norm_squared(p.D - X);
    t.x_minus_c = frobenius_norm_squared(X - p.C);
    t.weighted_xc = frobenius_norm_squared(a_half * (X - p.C) * b_pinv_half);
    t.weighted_dx = frobenius_norm_squared(a_pinv_half * (p.D - X) * b_half);
    return t;
}

/// |LHS - RHS| / (1 + LHS) of the splitting identity; zero up to round-off.
inline double splitting_identity_residual(const StructuredProblem& p, const SylvesterSolution& sol) {
    const SplittingTerms t = splitting_terms(p, sol);
    return std::abs(t.lhs - t.rhs()) / (1.0 + t.lhs);
}

} // namespace gpolar
