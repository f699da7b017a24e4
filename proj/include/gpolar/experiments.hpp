#pragma once

// Experiment drivers behind the command-line tool: the worked 2x2 example, the
// Monte Carlo comparison of upper bounds, the perturbation-bound sweep and the
// full bound report for a user-supplied problem.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gpolar/bounds.hpp"
#include "gpolar/matcore.hpp"
#include "gpolar/matrix_io.hpp"
#include "gpolar/perturb.hpp"
#include "gpolar/random.hpp"
#include "gpolar/sylvester.hpp"

namespace gpolar {

inline constexpr std::uint64_t kDefaultSeed = 20190601;

// ---------------------------------------------------------------------------
// Bound report for one structured problem

struct ProblemAnalysis {
    SylvesterSolution solution;
    double x_norm = 0.0;
    RangeConditions conditions;
    std::optional<SpectralSeparation> separation;   // absent when spectra of A and -B meet
    std::optional<double> ub_lrc;
    double ub_naive = 0.0;
    BoundPair pm;
    std::optional<AbcParams> abc;                   // absent when A or B is zero
    std::optional<BoundPair> abc_pair;
    std::optional<MuParams> mu;
    std::optional<BoundPair> mu_pair;
};

inline ProblemAnalysis analyze_problem(const StructuredProblem& p, double tol = kDefaultSolverTol) {
    ProblemAnalysis r;
    r.conditions = p.conditions;
    r.solution = solve_structured(p, tol);
    r.x_norm = frobenius_norm(r.solution.X);

    const EighFactors ea = eigh(p.A);
    const EighFactors eb = eigh(p.B);
    try {
        r.separation = eta(ea.lambda, RealVector(-eb.lambda));
        r.ub_lrc = bound_lrc(p.C, p.D, *r.separation);
    } catch (const NoUniqueSolution&) {
        r.separation.reset();
    }
    r.ub_naive = bound_naive(p.C, p.D);
    r.pm = bounds_pm(p.C, p.D);
    try {
        const PsdNorms na = psd_norms_from_spectrum(ea.lambda);
        const PsdNorms nb = psd_norms_from_spectrum(eb.lambda);
        r.abc = abc_params_from_norms(na, nb);
        r.abc_pair = bounds_abc(p.C, p.D, *r.abc);
        r.mu = mu_params_from_norms(na, nb);
        r.mu_pair = bounds_mu(p.C, p.D, *r.mu);
    } catch (const DomainError&) {
        r.abc.reset();
        r.mu.reset();
    }
    return r;
}

// ---------------------------------------------------------------------------
// Worked example: A = I2, B = [[1, sqrt3], [sqrt3, 4]], C = S(5pi/32), D = S(pi/6)

inline ComplexMatrix example_rotation_like(double t) {
    ComplexMatrix S(2, 2);
    S << std::cos(t), std::sin(t) / 4.0, std::sin(t) / 4.0, std::cos(t);
    return S;
}

inline StructuredProblem example_problem() {
    const double r3 = std::numbers::sqrt3;
    ComplexMatrix B(2, 2);
    B << 1.0, r3, r3, 4.0;
    return make_structured_problem(identity(2), B, example_rotation_like(5.0 * std::numbers::pi / 32.0),
                                   example_rotation_like(std::numbers::pi / 6.0));
}

inline constexpr std::array<std::string_view, 5> kUpperBoundNames{"lrc", "naive", "pm", "abc", "mu"};

struct ExampleReport {
    ComplexMatrix X;
    double x_norm = 0.0;
    double eta = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
    std::array<double, 5> upper{};       // lrc, naive, pm, abc, mu
    std::array<double, 5> rel_errors{};  // (upper - ||X||) / ||X||
    std::array<double, 3> lower{};       // pm, abc, mu
};

inline ExampleReport run_example() {
    const ProblemAnalysis a = analyze_problem(example_problem());
    ExampleReport r;
    r.X = a.solution.X;
    r.x_norm = a.x_norm;
    r.eta = a.separation.value().eta;
    r.lambda = a.mu.value().lambda;
    r.mu = a.mu->mu;
    r.upper = {a.ub_lrc.value(), a.ub_naive, a.pm.upper, a.abc_pair.value().upper, a.mu_pair.value().upper};
    r.lower = {a.pm.lower, a.abc_pair->lower, a.mu_pair->lower};
    for (std::size_t k = 0; k < r.upper.size(); ++k) {
        r.rel_errors[k] = (r.upper[k] - r.x_norm) / r.x_norm;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Monte Carlo comparison of the lrc, abc and mu upper bounds

enum class TestId { I, II, III, IV, V };

inline constexpr std::array<TestId, 5> kAllTests{TestId::I, TestId::II, TestId::III, TestId::IV, TestId::V};

inline std::string_view to_string(TestId id) {
    switch (id) {
    case TestId::I: return "i";
    case TestId::II: return "ii";
    case TestId::III: return "iii";
    case TestId::IV: return "iv";
    case TestId::V: return "v";
    }
    return "?";
}

inline std::optional<TestId> parse_test_id(std::string_view s) {
    for (TestId id : kAllTests) {
        if (to_string(id) == s) return id;
    }
    return std::nullopt;
}

struct ExperimentConfig {
    TestId test = TestId::I;
    std::uint64_t trials = 100000;
    std::uint64_t seed = kDefaultSeed;
    int size = 3;
    Distribution dist = Distribution::UniformReal;
    std::optional<std::filesystem::path> out;
    unsigned threads = 0;   // 0: hardware concurrency, capped by POLAR_PERTURB_THREADS
};

struct TrialTally {
    std::uint64_t alpha = 0;   // ub_abc <= ub_lrc
    std::uint64_t beta = 0;    // ub_abc <= ub_mu
    std::uint64_t gamma = 0;   // ub_mu  <= ub_lrc
    std::uint64_t trials = 0;
    std::uint64_t redraws = 0;

    TrialTally& operator+=(const TrialTally& o) {
        alpha += o.alpha;
        beta += o.beta;
        gamma += o.gamma;
        trials += o.trials;
        redraws += o.redraws;
        return *this;
    }
    friend bool operator==(const TrialTally&, const TrialTally&) = default;
};

inline unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("POLAR_PERTURB_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) {
            n = std::min(n, static_cast<unsigned>(cap));
        }
    }
    return n;
}

namespace detail {

inline constexpr int kMaxRedraws = 1000;

// One Monte Carlo trial; its draws depend only on (seed, trial index).
inline TrialTally montecarlo_trial(const ExperimentConfig& cfg, std::uint64_t index) {
    Rng rng = substream(cfg.seed, {static_cast<std::uint64_t>(cfg.test), index});
    const Index n = cfg.size;
    TrialTally out;
    out.trials = 1;
    for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
        const ComplexMatrix A1 = random_matrix(rng, n, n, cfg.dist);
        const ComplexMatrix B1 = random_matrix(rng, n, n, cfg.dist);
        ComplexMatrix C = random_matrix(rng, n, n, cfg.dist);
        ComplexMatrix D = random_matrix(rng, n, n, cfg.dist);
        switch (cfg.test) {
        case TestId::I: break;
        case TestId::II: D.setZero(); break;
        case TestId::III: C.setZero(); break;
        case TestId::IV: D = -C; break;
        case TestId::V: D = C; break;
        }
        const ComplexMatrix A = A1.adjoint() * A1;
        const ComplexMatrix B = B1.adjoint() * B1;
        try {
            const EighFactors ea = eigh(A);
            const EighFactors eb = eigh(B);
            const PsdNorms na = psd_norms_from_spectrum(ea.lambda);
            const PsdNorms nb = psd_norms_from_spectrum(eb.lambda);
            const SpectralSeparation sep = eta(ea.lambda, RealVector(-eb.lambda));
            const double ub_lrc = bound_lrc(C, D, sep);
            const double ub_abc = bounds_abc(C, D, abc_params_from_norms(na, nb)).upper;
            const double ub_mu = bounds_mu(C, D, mu_params_from_norms(na, nb)).upper;
            out.alpha += ub_abc <= ub_lrc ? 1 : 0;
            out.beta += ub_abc <= ub_mu ? 1 : 0;
            out.gamma += ub_mu <= ub_lrc ? 1 : 0;
            return out;
        } catch (const DomainError&) {
            ++out.redraws;
        }
    }
    throw NumericalFailure("montecarlo: trial " + std::to_string(index) + " exceeded the redraw limit");
}

// Runs body(i) for i in [0, count) on `threads` workers and sums the tallies.
template <class Body>
TrialTally parallel_tally(std::uint64_t count, unsigned threads, Body&& body) {
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
    std::vector<TrialTally> partial(threads);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned w) {
        try {
            const std::uint64_t begin = count * w / threads;
            const std::uint64_t end = count * (w + 1) / threads;
            for (std::uint64_t i = begin; i < end; ++i) partial[w] += body(i);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }
    TrialTally total;
    for (unsigned w = 0; w < threads; ++w) {
        if (errors[w]) std::rethrow_exception(errors[w]);
        total += partial[w];
    }
    return total;
}

} // namespace detail

inline TrialTally run_montecarlo(const ExperimentConfig& cfg) {
    if (cfg.trials < 1 || cfg.size < 1) {
        throw DomainError("montecarlo: trials and size must be positive");
    }
    return detail::parallel_tally(cfg.trials, resolve_thread_count(cfg.threads),
                                  [&](std::uint64_t i) { return detail::montecarlo_trial(cfg, i); });
}

inline constexpr std::string_view kMontecarloCsvHeader = "test_id,trials,seed,alpha,beta,gamma,redraws";

inline void write_montecarlo_row(std::ostream& os, TestId id, std::uint64_t seed, const TrialTally& t) {
    os << to_string(id) << ',' << t.trials << ',' << seed << ',' << t.alpha << ',' << t.beta << ','
       << t.gamma << ',' << t.redraws << '\n';
}

// ---------------------------------------------------------------------------
// Perturbation-bound sweep

struct SweepConfig {
    std::vector<int> sizes{2, 3, 4, 5, 6};
    std::vector<double> epsilons{0.0, 1e-3, 1e-2, 1e-1};
    int trials = 20;
    std::uint64_t seed = kDefaultSeed;
};

struct SweepRow {
    int size = 0;
    int rank = 0;
    double epsilon = 0.0;
    int trial = 0;
    double actual_u = 0.0;
    double actual_h = 0.0;
    double phi_bound_11 = 0.0;
    double gamma_bound_11 = 0.0;
    double phi_bound_opt = 0.0;
    double gamma_bound_opt = 0.0;
    double cls_bound = 0.0;
    double hmz_bound = 0.0;
};

struct SweepSummary {
    std::size_t rows = 0;
    std::size_t violations = 0;
    std::vector<std::string> messages;
};

inline constexpr std::string_view kSweepCsvHeader =
    "size,rank,epsilon,trial,actual_U,actual_H,phi_bound_11,gamma_bound_11,phi_bound_opt,"
    "gamma_bound_opt,cls_bound,hmz_bound";

inline constexpr double kBoundSlack = 1e-9;

inline bool within(double smaller, double larger) {
    return smaller <= larger + kBoundSlack * (1.0 + std::abs(larger));
}

/// Random scenario for one sweep cell: square A of random rank in [1, size],
/// D1 = I + eps E1, D2 = I + eps E2 with complex Gaussian E1, E2.
inline PerturbationScenario sweep_scenario(int size, double epsilon, int trial, std::uint64_t seed,
                                           int* rank_out = nullptr) {
    Rng rng = substream(seed, {static_cast<std::uint64_t>(size), std::bit_cast<std::uint64_t>(epsilon),
                               static_cast<std::uint64_t>(trial)});
    std::uniform_int_distribution<int> pick_rank(1, size);
    const int rank = pick_rank(rng);
    if (rank_out) *rank_out = rank;
    const Index n = size;
    const ComplexMatrix A = random_low_rank(rng, n, n, rank);
    const ComplexMatrix D1 = identity(n) + epsilon * random_complex_gaussian(rng, n, n);
    const ComplexMatrix D2 = identity(n) + epsilon * random_complex_gaussian(rng, n, n);
    return make_scenario(A, D1, D2);
}

inline SweepRow sweep_row(int size, double epsilon, int trial, std::uint64_t seed) {
    SweepRow row;
    row.size = size;
    row.epsilon = epsilon;
    row.trial = trial;
    const PerturbationScenario sc = sweep_scenario(size, epsilon, trial, seed, &row.rank);
    const PolarPerturbReport at11 = evaluate_bounds_at(sc, {1.0, 0.0}, {1.0, 0.0});
    const PolarPerturbReport phi_opt = subunitary_bound(sc, SearchStrategy::GridThenLocalSearch);
    const PolarPerturbReport gamma_opt = psd_factor_bound(sc, SearchStrategy::GridThenLocalSearch);
    row.actual_u = at11.actual_subunitary_diff;
    row.actual_h = at11.actual_psd_diff;
    row.phi_bound_11 = at11.bound_subunitary;
    row.gamma_bound_11 = at11.bound_psd;
    row.phi_bound_opt = phi_opt.bound_subunitary;
    row.gamma_bound_opt = gamma_opt.bound_psd;
    row.cls_bound = chen_li_sun_bound(sc.D1, sc.D2);
    row.hmz_bound = hong_meng_zheng_bound(sc);
    return row;
}

/// Names of the inequalities a sweep row violates; empty when the row is valid.
inline std::vector<std::string> check_row(const SweepRow& r) {
    std::vector<std::string> bad;
    auto need = [&](bool ok, const char* what) {
        if (!ok) bad.emplace_back(what);
    };
    need(within(r.actual_u, r.phi_bound_opt), "actual_U <= phi_bound_opt");
    need(within(r.phi_bound_opt, r.phi_bound_11), "phi_bound_opt <= phi_bound_11");
    need(within(r.phi_bound_11, r.cls_bound), "phi_bound_11 <= cls_bound");
    need(within(r.actual_h, r.gamma_bound_opt), "actual_H <= gamma_bound_opt");
    need(within(r.gamma_bound_opt, r.gamma_bound_11), "gamma_bound_opt <= gamma_bound_11");
    need(within(r.gamma_bound_11, r.hmz_bound), "gamma_bound_11 <= hmz_bound");
    return bad;
}

inline void write_sweep_row(std::ostream& os, const SweepRow& r) {
    os << r.size << ',' << r.rank << ',' << format_double(r.epsilon) << ',' << r.trial << ','
       << format_double(r.actual_u) << ',' << format_double(r.actual_h) << ','
       << format_double(r.phi_bound_11) << ',' << format_double(r.gamma_bound_11) << ','
       << format_double(r.phi_bound_opt) << ',' << format_double(r.gamma_bound_opt) << ','
       << format_double(r.cls_bound) << ',' << format_double(r.hmz_bound) << '\n';
}

inline SweepSummary run_perturb_sweep(const SweepConfig& cfg, std::ostream& csv) {
    if (cfg.trials < 1) {
        throw DomainError("perturb-sweep: trials must be positive");
    }
    for (int s : cfg.sizes) {
        if (s < 1) throw DomainError("perturb-sweep: sizes must be positive");
    }
    SweepSummary summary;
    csv << kSweepCsvHeader << '\n';
    for (int size : cfg.sizes) {
        for (double eps : cfg.epsilons) {
            for (int trial = 0; trial < cfg.trials; ++trial) {
                const SweepRow row = sweep_row(size, eps, trial, cfg.seed);
                write_sweep_row(csv, row);
                ++summary.rows;
                for (const auto& what : check_row(row)) {
                    ++summary.violations;
                    summary.messages.push_back("size=" + std::to_string(size) + " eps=" + format_double(eps) +
                                               " trial=" + std::to_string(trial) + ": " + what);
                }
            }
        }
    }
    return summary;
}

inline SweepSummary run_perturb_sweep(const SweepConfig& cfg, const std::filesystem::path& out_path) {
    std::ofstream out(out_path);
    if (!out) {
        throw Error("cannot open " + out_path.string() + " for writing");
    }
    SweepSummary s = run_perturb_sweep(cfg, out);
    out.flush();
    if (!out) {
        throw Error("write failed: " + out_path.string());
    }
    return s;
}

} // namespace gpolar
