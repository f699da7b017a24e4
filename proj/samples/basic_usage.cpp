// Solve a small structured Sylvester problem, compare the norm of its solution
// with the sandwich bounds, then perturb a matrix multiplicatively and check how
// far its polar factors move.

#include <iostream>

#include "gpolar/gpolar.hpp"

int main() {
    using namespace gpolar;

    ComplexMatrix A(2, 2), B(2, 2), C(2, 2), D(2, 2);
    A << 2.0, 0.5, 0.5, 1.0;
    B << 3.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 1.0;
    C << 1.0, 0.2, -0.3, 0.7;
    D << 0.4, 1.0, 0.0, Complex(0.5, 0.5);

    const StructuredProblem p = make_structured_problem(A, B, C, D);
    const ProblemAnalysis r = analyze_problem(p);
    std::cout << "||X||_F = " << r.x_norm << "  (residual " << r.solution.residual << ")\n";
    std::cout << "pm  [" << r.pm.lower << ", " << r.pm.upper << "]\n";
    std::cout << "abc [" << r.abc_pair->lower << ", " << r.abc_pair->upper << "]\n";
    std::cout << "mu  [" << r.mu_pair->lower << ", " << r.mu_pair->upper << "]\n";

    // Rank-one matrix, perturbed as D1^* M D2.
    ComplexMatrix M(3, 3);
    M << 1.0, 2.0, 3.0, 2.0, 4.0, 6.0, -1.0, -2.0, -3.0;
    ComplexMatrix D1 = identity(3), D2 = identity(3);
    D1(0, 1) = 0.01;
    D2(2, 2) = 1.02;
    const PerturbationScenario sc = make_scenario(M, D1, D2);
    const PolarPerturbReport u = subunitary_bound(sc, SearchStrategy::GridThenLocalSearch);
    const PolarPerturbReport h = psd_factor_bound(sc, SearchStrategy::GridThenLocalSearch);
    std::cout << "||V - U||_F   = " << u.actual_subunitary_diff << " <= " << u.bound_subunitary << '\n';
    std::cout << "|| |B|-|A| ||_F = " << h.actual_psd_diff << " <= " << h.bound_psd << '\n';
    return 0;
}
