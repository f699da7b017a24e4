#pragma once

// Multiplicative perturbations B = D1* A D2 and Frobenius-norm bounds for the
// change of both generalized polar factors.
//
// For any complex (s, t):
//   ||V - U||_F     <= sqrt(phi1^2 + phi2^2 - phi3^2)
//   || |B|-|A| ||_F <= sqrt(gamma1^2 + gamma2^2 - gamma3^2)
// so every probe of (s, t) certifies an upper bound; searching only tightens it.

#include <array>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gpolar/detail/affine_norm.hpp"
#include "gpolar/detail/nelder_mead.hpp"
#include "gpolar/matcore.hpp"
#include "gpolar/polar.hpp"

namespace gpolar {

inline constexpr double kIllConditionedThreshold = 1e12;

struct PerturbationScenario {
    ComplexMatrix A;        // m x n
    ComplexMatrix D1;       // m x m nonsingular
    ComplexMatrix D2;       // n x n nonsingular
    ComplexMatrix B;        // D1* A D2
    ComplexMatrix D1_inv;
    ComplexMatrix D2_inv;
    PolarFactors polar_a;   // U, |A|
    PolarFactors polar_b;   // V, |B|
    double lambda = 1.0;    // max{||A^+|| ||B||, ||A|| ||B^+||}, at least 1
    double cond_d1 = 1.0;
    double cond_d2 = 1.0;

    bool ill_conditioned() const {
        return cond_d1 > kIllConditionedThreshold || cond_d2 > kIllConditionedThreshold;
    }
};

enum class SearchStrategy { AtOneOne, GridThenLocalSearch };

struct PolarPerturbReport {
    Complex s{1.0, 0.0};
    Complex t{1.0, 0.0};
    std::array<double, 3> phi{};
    std::array<double, 3> gamma{};
    double bound_subunitary = 0.0;
    double bound_psd = 0.0;
    double actual_subunitary_diff = 0.0;   // ||V - U||_F
    double actual_psd_diff = 0.0;          // || |B| - |A| ||_F
    bool clamped = false;                  // a reported radicand was negative and set to 0
    int clamped_probes = 0;                // negative radicands met during the search
    int evaluations = 0;
};

namespace detail {

struct Inversion {
    ComplexMatrix inverse;
    double cond = 1.0;
};

inline Inversion invert_nonsingular(const ComplexMatrix& D, const char* what) {
    require_square(D, what);
    const SvdFactors f = svd(D);
    const Index n = D.rows();
    if (n == 0) {
        return {D, 1.0};
    }
    if (f.rank < n) {
        throw DomainError(std::string(what) + ": matrix is singular");
    }
    return {Eigen::PartialPivLU<ComplexMatrix>(D).inverse(), f.sigma(0) / f.sigma(n - 1)};
}

// Largest singular value and reciprocal of the smallest nonzero one.
inline std::pair<double, double> norm_and_pinv_norm(const ComplexMatrix& M) {
    const SvdFactors f = svd(M);
    if (f.rank == 0) {
        return {0.0, 0.0};
    }
    return {f.sigma(0), 1.0 / f.sigma(f.rank - 1)};
}

} // namespace detail

/// Builds B = D1* A D2 together with both polar decompositions and lambda.
/// Throws DomainError if D1 or D2 is singular.
inline PerturbationScenario make_scenario(const ComplexMatrix& A, const ComplexMatrix& D1,
                                          const ComplexMatrix& D2) {
    require_finite(A, "make_scenario A");
    if (D1.rows() != A.rows() || D1.cols() != A.rows()) {
        throw ShapeMismatch("make_scenario: D1 must be m x m with m = rows(A)");
    }
    if (D2.rows() != A.cols() || D2.cols() != A.cols()) {
        throw ShapeMismatch("make_scenario: D2 must be n x n with n = cols(A)");
    }
    auto inv1 = detail::invert_nonsingular(D1, "make_scenario D1");
    auto inv2 = detail::invert_nonsingular(D2, "make_scenario D2");

    PerturbationScenario sc;
    sc.A = A;
    sc.D1 = D1;
    sc.D2 = D2;
    sc.D1_inv = std::move(inv1.inverse);
    sc.D2_inv = std::move(inv2.inverse);
    sc.cond_d1 = inv1.cond;
    sc.cond_d2 = inv2.cond;
    sc.B = D1.adjoint() * A * D2;
    sc.polar_a = generalized_polar(sc.A);
    sc.polar_b = generalized_polar(sc.B);
    if (sc.polar_a.rank != sc.polar_b.rank) {
        throw NumericalFailure("make_scenario: numerical rank of B = D1* A D2 (" +
                               std::to_string(sc.polar_b.rank) + ") differs from rank of A (" +
                               std::to_string(sc.polar_a.rank) + ")");
    }
    const auto [a_norm, a_pinv_norm] = detail::norm_and_pinv_norm(sc.A);
    const auto [b_norm, b_pinv_norm] = detail::norm_and_pinv_norm(sc.B);
    sc.lambda = std::max(1.0, std::max(a_pinv_norm * b_norm, a_norm * b_pinv_norm));
    return sc;
}

/// phi1, phi2, phi3 at (s, t), assembled directly from their defining formulas.
inline std::array<double, 3> phi_terms(const PerturbationScenario& sc, Complex s, Complex t) {
    const ComplexMatrix& U = sc.polar_a.U;
    const ComplexMatrix& V = sc.polar_b.U;
    const Index m = sc.A.rows();
    const Index n = sc.A.cols();
    const ComplexMatrix Im = identity(m);
    const ComplexMatrix In = identity(n);
    const ComplexMatrix VVs = V * V.adjoint();
    const ComplexMatrix UsU = U.adjoint() * U;
    const Complex sb = std::conj(s);
    const Complex tb = std::conj(t);

    const double phi1 = frobenius_norm(V * (In - t * sc.D2_inv) + VVs * (sb * sc.D1_inv - Im) * U);
    const double phi2 = frobenius_norm(U.adjoint() * (tb * sc.D1 - Im) + UsU * (In - s * sc.D2) * V.adjoint());
    const double phi3 = frobenius_norm(V * (sb * sc.D2.adjoint() - t * sc.D2_inv) * UsU +
                                       VVs * (sb * sc.D1_inv - t * sc.D1.adjoint()) * U) /
                        std::sqrt(sc.lambda + 1.0);
    return {phi1, phi2, phi3};
}

/// gamma1, gamma2, gamma3 at (s, t), assembled directly from their defining formulas.
inline std::array<double, 3> gamma_terms(const PerturbationScenario& sc, Complex s, Complex t) {
    const ComplexMatrix& U = sc.polar_a.U;
    const ComplexMatrix& V = sc.polar_b.U;
    const ComplexMatrix& absA = sc.polar_a.H;
    const ComplexMatrix& absB = sc.polar_b.H;
    const ComplexMatrix In = identity(sc.A.cols());
    const Complex sb = std::conj(s);

    const ComplexMatrix mixed = V.adjoint() * (t * sc.D1.adjoint() - sb * sc.D1_inv) * sc.A;
    const double g1 = frobenius_norm(absB * (In - t * sc.D2_inv) + mixed);
    const double g2 = frobenius_norm(absA * (s * sc.D2 - In));
    const double g3 = frobenius_norm(absB * (In - t * sc.D2_inv) * U.adjoint() * U + mixed -
                                     V.adjoint() * V * (sb * sc.D2.adjoint() - In) * absA) /
                      std::sqrt(sc.lambda + 1.0);
    return {g1, g2, g3};
}

namespace detail {

// Radicands phi1^2 + phi2^2 - phi3^2 and gamma1^2 + gamma2^2 - gamma3^2 as
// Hermitian forms in (1, s, conj s, t, conj t); used by the (s, t) search.
struct RadicandForms {
    AffineNormSquared phi1, phi2, phi3;
    AffineNormSquared g1, g2, g3;
    double inv_lambda1 = 1.0;   // 1 / (lambda + 1)

    double phi(Complex s, Complex t) const {
        return phi1(s, t) + phi2(s, t) - phi3(s, t) * inv_lambda1;
    }
    double gamma(Complex s, Complex t) const {
        return g1(s, t) + g2(s, t) - g3(s, t) * inv_lambda1;
    }
};

inline RadicandForms build_radicand_forms(const PerturbationScenario& sc) {
    const ComplexMatrix& U = sc.polar_a.U;
    const ComplexMatrix& V = sc.polar_b.U;
    const ComplexMatrix& absA = sc.polar_a.H;
    const ComplexMatrix& absB = sc.polar_b.H;
    const ComplexMatrix Us = U.adjoint();
    const ComplexMatrix Vs = V.adjoint();
    const ComplexMatrix VVs = V * Vs;
    const ComplexMatrix UsU = Us * U;
    const ComplexMatrix VsV = Vs * V;
    const ComplexMatrix D1s = sc.D1.adjoint();
    const ComplexMatrix D2s = sc.D2.adjoint();

    RadicandForms f;
    f.inv_lambda1 = 1.0 / (sc.lambda + 1.0);
    f.phi1 = AffineNormSquared({{Coef::One, V - VVs * U},
                                {Coef::T, -(V * sc.D2_inv)},
                                {Coef::SBar, VVs * sc.D1_inv * U}});
    f.phi2 = AffineNormSquared({{Coef::One, UsU * Vs - Us},
                                {Coef::TBar, Us * sc.D1},
                                {Coef::S, -(UsU * sc.D2 * Vs)}});
    f.phi3 = AffineNormSquared({{Coef::SBar, V * D2s * UsU + VVs * sc.D1_inv * U},
                                {Coef::T, -(V * sc.D2_inv * UsU) - VVs * D1s * U}});

    const ComplexMatrix VsD1sA = Vs * D1s * sc.A;
    const ComplexMatrix VsD1invA = Vs * sc.D1_inv * sc.A;
    f.g1 = AffineNormSquared({{Coef::One, absB},
                              {Coef::T, VsD1sA - absB * sc.D2_inv},
                              {Coef::SBar, -VsD1invA}});
    f.g2 = AffineNormSquared({{Coef::One, -absA}, {Coef::S, absA * sc.D2}});
    f.g3 = AffineNormSquared({{Coef::One, absB * UsU + VsV * absA},
                              {Coef::T, VsD1sA - absB * sc.D2_inv * UsU},
                              {Coef::SBar, -VsD1invA - VsV * D2s * absA}});
    return f;
}

inline std::pair<Complex, Complex> unpack(const std::array<double, 4>& x) {
    return {Complex(x[0], x[1]), Complex(x[2], x[3])};
}

struct SearchOutcome {
    Complex s{1.0, 0.0};
    Complex t{1.0, 0.0};
    int evaluations = 0;
    int clamped_probes = 0;
};

// 5x5x5x5 grid over Re in [0, 2], Im in [-1, 1] for both s and t (it contains
// (1, 1)), then Nelder-Mead from the best grid point, at most 500 evaluations.
template <class Radicand>
SearchOutcome search_st(Radicand&& radicand) {
    static constexpr std::array<double, 5> kRe{0.0, 0.5, 1.0, 1.5, 2.0};
    static constexpr std::array<double, 5> kIm{-1.0, -0.5, 0.0, 0.5, 1.0};
    SearchOutcome out;
    auto objective = [&](const std::array<double, 4>& x) {
        const auto [s, t] = unpack(x);
        const double r = radicand(s, t);
        if (r < 0.0) {
            ++out.clamped_probes;
            return 0.0;
        }
        return r;
    };

    std::array<double, 4> best{1.0, 0.0, 1.0, 0.0};
    double best_val = objective(best);
    int evals = 1;
    for (double sr : kRe)
        for (double si : kIm)
            for (double tr : kRe)
                for (double ti : kIm) {
                    const std::array<double, 4> x{sr, si, tr, ti};
                    const double v = objective(x);
                    ++evals;
                    if (v < best_val) {
                        best_val = v;
                        best = x;
                    }
                }
    const auto local = nelder_mead<4>(objective, best, 0.25, 500);
    evals += local.evaluations;
    if (local.value < best_val) {
        best = local.x;
    }
    std::tie(out.s, out.t) = unpack(best);
    out.evaluations = evals;
    return out;
}

inline double clamped_root(double radicand, bool& clamped) {
    if (radicand < 0.0) {
        clamped = true;
        return 0.0;
    }
    return std::sqrt(radicand);
}

inline double sum_sq_minus(const std::array<double, 3>& v) {
    return v[0] * v[0] + v[1] * v[1] - v[2] * v[2];
}

inline PolarPerturbReport evaluate_report(const PerturbationScenario& sc, Complex s, Complex t) {
    PolarPerturbReport r;
    r.s = s;
    r.t = t;
    r.phi = phi_terms(sc, s, t);
    r.gamma = gamma_terms(sc, s, t);
    r.bound_subunitary = clamped_root(sum_sq_minus(r.phi), r.clamped);
    r.bound_psd = clamped_root(sum_sq_minus(r.gamma), r.clamped);
    r.actual_subunitary_diff = frobenius_norm(sc.polar_b.U - sc.polar_a.U);
    r.actual_psd_diff = frobenius_norm(sc.polar_b.H - sc.polar_a.H);
    r.evaluations = 1;
    return r;
}

} // namespace detail

/// Evaluates both bound families at a caller-chosen (s, t).
inline PolarPerturbReport evaluate_bounds_at(const PerturbationScenario& sc, Complex s, Complex t) {
    return detail::evaluate_report(sc, s, t);
}

/// Bound on ||V - U||_F. The returned report holds the (s, t) that minimised the
/// phi radicand; gamma terms are evaluated at the same point.
inline PolarPerturbReport subunitary_bound(const PerturbationScenario& sc, SearchStrategy strategy) {
    const Complex one{1.0, 0.0};
    PolarPerturbReport base = detail::evaluate_report(sc, one, one);
    if (strategy == SearchStrategy::AtOneOne) {
        return base;
    }
    const auto forms = detail::build_radicand_forms(sc);
    const auto found = detail::search_st([&](Complex s, Complex t) { return forms.phi(s, t); });
    PolarPerturbReport cand = detail::evaluate_report(sc, found.s, found.t);
    PolarPerturbReport& best = cand.bound_subunitary < base.bound_subunitary ? cand : base;
    best.evaluations = found.evaluations + 2;
    best.clamped_probes = found.clamped_probes;
    return best;
}

/// Bound on || |B| - |A| ||_F; see subunitary_bound.
inline PolarPerturbReport psd_factor_bound(const PerturbationScenario& sc, SearchStrategy strategy) {
    const Complex one{1.0, 0.0};
    PolarPerturbReport base = detail::evaluate_report(sc, one, one);
    if (strategy == SearchStrategy::AtOneOne) {
        return base;
    }
    const auto forms = detail::build_radicand_forms(sc);
    const auto found = detail::search_st([&](Complex s, Complex t) { return forms.gamma(s, t); });
    PolarPerturbReport cand = detail::evaluate_report(sc, found.s, found.t);
    PolarPerturbReport& best = cand.bound_psd < base.bound_psd ? cand : base;
    best.evaluations = found.evaluations + 2;
    best.clamped_probes = found.clamped_probes;
    return best;
}

/// sqrt((||I - D1^-1|| + ||I - D2^-1||)^2 + (||I - D1|| + ||I - D2||)^2).
inline double chen_li_sun_bound(const ComplexMatrix& D1, const ComplexMatrix& D2) {
    const ComplexMatrix D1_inv = detail::invert_nonsingular(D1, "chen_li_sun_bound D1").inverse;
    const ComplexMatrix D2_inv = detail::invert_nonsingular(D2, "chen_li_sun_bound D2").inverse;
    const ComplexMatrix Im = identity(D1.rows());
    const ComplexMatrix In = identity(D2.rows());
    const double inv_part = frobenius_norm(Im - D1_inv) + frobenius_norm(In - D2_inv);
    const double direct_part = frobenius_norm(Im - D1) + frobenius_norm(In - D2);
    return std::hypot(inv_part, direct_part);
}

/// sqrt(rho^2 + ||A||_2^2 ||I - D2||^2) with
/// rho = ||B||_2 ||I - D2^-1|| + ||D1* - D1^-1|| ||A||_2.
inline double hong_meng_zheng_bound(const PerturbationScenario& sc) {
    const ComplexMatrix In = identity(sc.A.cols());
    const double a2 = spectral_norm(sc.A);
    const double rho = spectral_norm(sc.B) * frobenius_norm(In - sc.D2_inv) +
                       frobenius_norm(sc.D1.adjoint() - sc.D1_inv) * a2;
    return std::hypot(rho, a2 * frobenius_norm(In - sc.D2));
}

} // namespace gpolar
