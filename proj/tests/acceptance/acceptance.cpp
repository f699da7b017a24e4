// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "gpolar/gpolar.hpp"
#include "support/oracles.hpp"

using namespace gpolar;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// --- 1: worked example -------------------------------------------------

void worked_example_reference() {
    const auto t0 = Clock::now();
    const ExampleReport r = run_example();
    const double secs = seconds_since(t0);
    double worst_abs = std::max({std::abs(r.x_norm - 1.2496), std::abs(r.eta - 1.1832),
                                 std::abs(r.lambda - 4.7913), std::abs(r.mu - 0.8091)});
    const double upper[] = {1.4915, 1.7648, 1.2602, 1.2578, 1.2578};
    const double rel[] = {19.36, 41.23, 0.85, 0.66, 0.66};
    double worst_rel = 0.0;
    for (int k = 0; k < 5; ++k) {
        worst_abs = std::max(worst_abs, std::abs(r.upper[k] - upper[k]));
        worst_rel = std::max(worst_rel, std::abs(100.0 * r.rel_errors[k] - rel[k]));
    }
    const bool ok = worst_abs <= 5e-5 && worst_rel <= 0.02 && secs < 1.0;
    report(1, ok,
           fmt("max |value - reference| %.2e", worst_abs) + fmt(", max |rel err - reference| %.4f pp", worst_rel) +
               fmt(", %.3f s", secs));
}

// --- 2: Monte Carlo bands ------------------------------------------------------

struct Band {
    double lo, hi;
    bool holds(double v) const { return v >= lo && v <= hi; }
};

void montecarlo_bands() {
    const auto t0 = Clock::now();
    // alpha, beta, gamma bands per test, as fractions of N.
    const Band bands[5][3] = {
        {{0.999, 1}, {0.9999, 1}, {0.999, 1}},
        {{0.37, 0.43}, {0.997, 1}, {0, 0.001}},
        {{0.37, 0.43}, {0.997, 1}, {0, 0.001}},
        {{0.9999, 1}, {0.99, 1}, {0.9999, 1}},
        {{0.9999, 1}, {0.72, 0.78}, {0.9999, 1}},
    };
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < kAllTests.size(); ++k) {
        ExperimentConfig cfg;
        cfg.test = kAllTests[k];
        cfg.trials = 100000;
        const TrialTally t = run_montecarlo(cfg);
        const double n = static_cast<double>(t.trials);
        const double v[3] = {t.alpha / n, t.beta / n, t.gamma / n};
        bool test_ok = true;
        for (int j = 0; j < 3; ++j) test_ok = test_ok && bands[k][j].holds(v[j]);
        ok = ok && test_ok;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s%s %.5f/%.5f/%.5f%s", k ? "; " : "",
                      std::string(to_string(cfg.test)).c_str(), v[0], v[1], v[2], test_ok ? "" : " (out of band)");
        detail += buf;
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 60.0;
    report(2, ok, detail + fmt("; %.1f s", secs));
}

// --- 3, 4: splitting identity and sandwich on structured instances -------------

void structured_suites() {
    Rng rng = substream(kDefaultSeed, {3});
    double worst_identity = 0.0;
    double worst_sandwich = -1e300;   // largest violation (positive means failure)
    int instances = 0, rank_deficient = 0, abc_checked = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto inst = oracle::random_structured(rng);
        const auto p = make_structured_problem(inst.A, inst.B, inst.C, inst.D);
        const auto a = analyze_problem(p);
        ++instances;
        if (inst.rank_a < inst.A.rows() || inst.rank_b < inst.B.rows()) ++rank_deficient;
        worst_identity = std::max(worst_identity, splitting_identity_residual(p, a.solution));

        const double x = a.x_norm;
        const double slack = 1e-10 * (1 + x);
        auto enclose = [&](double lo, double hi) {
            worst_sandwich = std::max({worst_sandwich, lo - x - slack, x - hi - slack});
        };
        enclose(a.pm.lower, a.pm.upper);
        if (a.conditions.full() && a.abc_pair) {
            ++abc_checked;
            enclose(a.abc_pair->lower, a.abc_pair->upper);
            enclose(a.mu_pair->lower, a.mu_pair->upper);
        }
        worst_sandwich = std::max(worst_sandwich, x - a.ub_naive - slack);
        if (a.ub_lrc) worst_sandwich = std::max(worst_sandwich, x - *a.ub_lrc - slack);
    }
    report(3, worst_identity <= 1e-9,
           fmt("max splitting-identity residual %.2e", worst_identity) + " over " + std::to_string(instances) +
               " instances (" + std::to_string(rank_deficient) + " rank-deficient)");
    report(4, worst_sandwich <= 0.0 && abc_checked == instances,
           fmt("max violation beyond slack %.2e", worst_sandwich) + ", abc/mu checked on " +
               std::to_string(abc_checked) + "/" + std::to_string(instances));
}

// --- 5: ordering of upper bounds -------------------------------------------------

void ordering_suite() {
    Rng rng = substream(kDefaultSeed, {5});
    double worst = -1e300;
    for (int k = 0; k < 1000; ++k) {
        const Index m = oracle::uniform_index(rng, 1, 6), n = oracle::uniform_index(rng, 1, 6);
        const ComplexMatrix A = oracle::random_psd(rng, m, oracle::uniform_index(rng, 1, m));
        const ComplexMatrix B = oracle::random_psd(rng, n, oracle::uniform_index(rng, 1, n));
        const ComplexMatrix C = random_complex_gaussian(rng, m, n);
        const ComplexMatrix D = random_complex_gaussian(rng, m, n);
        const AbcParams ap = abc_params(A, B);
        const MuParams mp = mu_params(A, B);
        const double naive = bound_naive(C, D);
        const double pm = bounds_pm(C, D).upper;
        const double abc = bounds_abc(C, D, ap).upper;
        const double mu = bounds_mu(C, D, mp).upper;
        worst = std::max({worst, pm - naive, abc - pm, mu - pm, ap.c - std::min(ap.a, ap.b)});
    }
    // c < min{a, b} is strict; the others allow equality.
    report(5, worst <= 1e-12, fmt("max (left - right) %.2e over 1000 PSD pairs", worst));
}

// --- 6: perturbation bounds --------------------------------------------------------

void perturbation_suite() {
    Rng rng = substream(kDefaultSeed, {6});
    static constexpr double kEpsilons[] = {1e-3, 1e-2, 1e-1};
    double worst = -1e300;
    int clamped = 0;
    for (int k = 0; k < 1000; ++k) {
        const Index m = oracle::uniform_index(rng, 2, 6), n = oracle::uniform_index(rng, 2, 6);
        const Index r = oracle::uniform_index(rng, 1, std::min(m, n));
        const double eps = kEpsilons[k % 3];
        const ComplexMatrix A = random_low_rank(rng, m, n, r);
        const ComplexMatrix D1 = identity(m) + eps * random_complex_gaussian(rng, m, m);
        const ComplexMatrix D2 = identity(n) + eps * random_complex_gaussian(rng, n, n);
        const PerturbationScenario sc = make_scenario(A, D1, D2);
        const auto at11 = evaluate_bounds_at(sc, {1.0, 0.0}, {1.0, 0.0});
        const auto u_opt = subunitary_bound(sc, SearchStrategy::GridThenLocalSearch);
        const auto h_opt = psd_factor_bound(sc, SearchStrategy::GridThenLocalSearch);
        const double cls = chen_li_sun_bound(D1, D2);
        const double hmz = hong_meng_zheng_bound(sc);
        if (at11.clamped) ++clamped;
        worst = std::max({worst, at11.actual_subunitary_diff - at11.bound_subunitary - 1e-9,
                          at11.bound_subunitary - cls - 1e-9, at11.actual_psd_diff - at11.bound_psd - 1e-9,
                          at11.bound_psd - hmz - 1e-9, u_opt.bound_subunitary - at11.bound_subunitary - 1e-9,
                          h_opt.bound_psd - at11.bound_psd - 1e-9,
                          u_opt.actual_subunitary_diff - u_opt.bound_subunitary - 1e-9,
                          h_opt.actual_psd_diff - h_opt.bound_psd - 1e-9});
    }
    report(6, worst <= 0.0,
           fmt("max violation beyond slack %.2e", worst) + " over 1000 scenarios, " + std::to_string(clamped) +
               " clamped radicands");
}

// --- 7: pseudoinverse and polar invariants -------------------------------------------

void polar_suite() {
    Rng rng = substream(kDefaultSeed, {7});
    struct Shape {
        Index m, n, r;
    };
    std::vector<Shape> shapes;
    for (Index m = 1; m <= 6; ++m)
        for (Index n = 1; n <= 6; ++n)
            for (Index r = 0; r <= std::min(m, n); ++r) shapes.push_back({m, n, r});
    double worst_penrose = 0.0, worst_polar = 0.0, worst_adjoint = 0.0;
    int rank_errors = 0;
    for (int k = 0; k < 1000; ++k) {
        const Shape s = shapes[static_cast<std::size_t>(k) % shapes.size()];
        const ComplexMatrix A = random_low_rank(rng, s.m, s.n, s.r);
        worst_penrose = std::max(worst_penrose, oracle::penrose_residual(A, pinv(A)));
        const PolarFactors f = generalized_polar(A);
        if (f.rank != s.r) ++rank_errors;
        worst_polar = std::max(worst_polar, verify_polar(A, f).max());
        const ComplexMatrix abs_adj = psd_sqrt(hermitian_part(A * A.adjoint()));
        worst_adjoint =
            std::max(worst_adjoint, frobenius_norm(abs_adj - f.U * f.H * f.U.adjoint()) / (1 + frobenius_norm(A)));
    }
    const bool ok = worst_penrose <= 1e-10 && worst_polar <= 1e-10 && worst_adjoint <= 1e-10 && rank_errors == 0;
    report(7, ok,
           fmt("Penrose %.2e", worst_penrose) + fmt(", polar %.2e", worst_polar) +
               fmt(", |A*| vs U|A|U* %.2e", worst_adjoint) + ", " + std::to_string(shapes.size()) +
               " shape/rank combinations, rank errors " + std::to_string(rank_errors));
}

// --- 8: solver cross-check --------------------------------------------------------------

void solver_crosscheck() {
    Rng rng = substream(kDefaultSeed, {8});
    double worst_kron = 0.0, worst_general = 0.0;
    for (int k = 0; k < 200; ++k) {
        const auto inst = oracle::random_structured(rng, 1, 6, true);
        const auto p = make_structured_problem(inst.A, inst.B, inst.C, inst.D);
        const ComplexMatrix X = solve_structured(p).X;
        const ComplexMatrix S = inst.A * inst.C + inst.D * inst.B;
        const ComplexMatrix Xk = oracle::kron_sylvester(inst.A, inst.B, S);
        const ComplexMatrix Xg = solve_general_hermitian(inst.A, -inst.B, S);
        const double scale = frobenius_norm(Xk);
        worst_kron = std::max(worst_kron, frobenius_norm(X - Xk) / scale);
        worst_general = std::max(worst_general, frobenius_norm(X - Xg) / scale);
    }
    report(8, worst_kron <= 1e-9 && worst_general <= 1e-9,
           fmt("max relative difference: Kronecker %.2e", worst_kron) + fmt(", general Hermitian %.2e", worst_general));
}

template <class F>
void guarded(int id, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

} // namespace

int main() {
    guarded(1, worked_example_reference);
    guarded(2, montecarlo_bands);
    guarded(3, structured_suites);
    guarded(5, ordering_suite);
    guarded(6, perturbation_suite);
    guarded(7, polar_suite);
    guarded(8, solver_crosscheck);
    std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
