#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gpolar/experiments.hpp"
#include "gpolar/sylvester.hpp"
#include "support/oracles.hpp"

using namespace gpolar;

TEST(SolveStructured, IdentityCoefficientsAverage) {
    Rng rng = substream(31, {});
    const ComplexMatrix C = random_complex_gaussian(rng, 3, 2);
    const ComplexMatrix D = random_complex_gaussian(rng, 3, 2);
    const auto p = make_structured_problem(identity(3), identity(2), C, D);
    const auto sol = solve_structured(p);
    EXPECT_LT((sol.X - (C + D) / 2.0).norm(), 1e-14);
    EXPECT_TRUE(sol.range_conforming);
}

TEST(SolveStructured, EqualRightSidesReturnThem) {
    const auto inst = [] {
        Rng rng = substream(32, {});
        return oracle::random_structured(rng);
    }();
    const auto p = make_structured_problem(inst.A, inst.B, inst.C, inst.C);
    const auto sol = solve_structured(p);
    EXPECT_LT((sol.X - inst.C).norm(), 1e-10 * (1 + inst.C.norm()));
    EXPECT_LE(splitting_identity_residual(p, sol), 1e-12);
}

TEST(SolveStructured, WorkedExample) {
    const auto p = example_problem();
    const auto sol = solve_structured(p);
    ComplexMatrix expected(2, 2);
    expected << 0.8791489579400805, 0.11902370432660928, 0.11595906898653786, 0.8723364462698303;
    EXPECT_LT((sol.X - expected).norm(), 1e-14);
    EXPECT_LE(sol.residual, 1e-14);
    EXPECT_LE(splitting_identity_residual(p, sol), 1e-10);
    EXPECT_TRUE(p.conditions.full());
}

TEST(SolveStructured, FlagsAndPreconditions) {
    ComplexMatrix A = ComplexMatrix::Zero(2, 2);
    A(0, 0) = 1.0;
    ComplexMatrix C = ComplexMatrix::Zero(2, 2);
    C(1, 0) = 1.0;   // outside range(A)
    const auto p = make_structured_problem(A, identity(2), C, ComplexMatrix::Zero(2, 2));
    EXPECT_FALSE(p.conditions.c_in_range_a);
    EXPECT_TRUE(p.conditions.d_in_corange_b);
    EXPECT_THROW(solve_structured(p), PreconditionError);
}

TEST(SolveStructured, InconsistentRightSide) {
    // D outside range(A) on the left makes AC + DB unreachable by a range-conforming X.
    ComplexMatrix A = ComplexMatrix::Zero(2, 2);
    A(0, 0) = 1.0;
    ComplexMatrix D = ComplexMatrix::Zero(2, 2);
    D(1, 1) = 1.0;
    const auto p = make_structured_problem(A, identity(2), ComplexMatrix::Zero(2, 2), D);
    ASSERT_TRUE(p.conditions.basic());
    EXPECT_FALSE(p.conditions.d_in_range_a);
    EXPECT_THROW(solve_structured(p), InconsistentSystem);
}

TEST(MakeStructuredProblem, Validation) {
    EXPECT_THROW(make_structured_problem(identity(2), identity(3), ComplexMatrix::Zero(2, 2),
                                         ComplexMatrix::Zero(2, 2)),
                 ShapeMismatch);
    EXPECT_THROW(make_structured_problem(ComplexMatrix::Zero(2, 3), identity(3), ComplexMatrix::Zero(2, 3),
                                         ComplexMatrix::Zero(2, 3)),
                 ShapeMismatch);
    ComplexMatrix N = identity(2);
    N(1, 1) = -1.0;
    EXPECT_THROW(make_structured_problem(N, identity(2), identity(2), identity(2)), NotPsdError);
}

TEST(SolveStructured, AgreesWithKroneckerOracleOnRankDeficient) {
    Rng rng = substream(33, {});
    for (int k = 0; k < 200; ++k) {
        const auto inst = oracle::random_structured(rng);
        const auto p = make_structured_problem(inst.A, inst.B, inst.C, inst.D);
        ASSERT_TRUE(p.conditions.full());
        const auto sol = solve_structured(p);
        const ComplexMatrix ref = oracle::kron_sylvester(inst.A, inst.B, inst.A * inst.C + inst.D * inst.B);
        EXPECT_LE((sol.X - ref).norm(), 1e-8 * (1 + ref.norm())) << "instance " << k;
        EXPECT_TRUE(sol.range_conforming);
    }
}

TEST(SplittingIdentity, HoldsOnRandomInstances) {
    Rng rng = substream(34, {});
    for (int k = 0; k < 300; ++k) {
        const auto inst = oracle::random_structured(rng);
        const auto p = make_structured_problem(inst.A, inst.B, inst.C, inst.D);
        const auto sol = solve_structured(p);
        EXPECT_LE(splitting_identity_residual(p, sol), 1e-9) << "instance " << k;
        const SplittingTerms t = splitting_terms(p, sol);
        EXPECT_GE(t.lhs + 1e-12, t.d_minus_x + t.x_minus_c);
    }
}

TEST(SolveGeneralHermitian, KnownValues) {
    Rng rng = substream(35, {});
    const ComplexMatrix C = random_complex_gaussian(rng, 3, 2);
    EXPECT_LT((solve_general_hermitian(identity(3), -identity(2), 2.0 * C) - C).norm(), 1e-14);

    ComplexMatrix omega = ComplexMatrix::Zero(2, 2);
    omega(0, 0) = 2.0;
    omega(1, 1) = 1.0;
    ComplexMatrix S(2, 1);
    S << 2.0, 3.0;
    ComplexMatrix expected(2, 1);
    expected << 1.0, 3.0;
    EXPECT_LT((solve_general_hermitian(omega, ComplexMatrix::Zero(1, 1), S) - expected).norm(), 1e-15);
}

TEST(SolveGeneralHermitian, OverlappingSpectraThrow) {
    EXPECT_THROW(solve_general_hermitian(identity(2), identity(2), identity(2)), NoUniqueSolution);
}

TEST(SolveGeneralHermitian, RandomResidual) {
    Rng rng = substream(36, {});
    for (int k = 0; k < 50; ++k) {
        const Index m = 1 + k % 5, n = 1 + (k / 5) % 5;
        const ComplexMatrix Go = random_complex_gaussian(rng, m, m);
        const ComplexMatrix Gg = random_complex_gaussian(rng, n, n);
        const ComplexMatrix omega = Go.adjoint() * Go + identity(m);   // spectrum >= 1
        const ComplexMatrix gamma = -(Gg.adjoint() * Gg) - identity(n); // spectrum <= -1
        const ComplexMatrix S = random_complex_gaussian(rng, m, n);
        const ComplexMatrix X = solve_general_hermitian(omega, gamma, S);
        EXPECT_LE((omega * X - X * gamma - S).norm(), 1e-10 * (1 + S.norm()));
    }
}
