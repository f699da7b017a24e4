// polar_perturb: worked example, Monte Carlo bound comparison, perturbation
// sweeps and a solver for user-supplied structured Sylvester problems.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage / parse / input error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gpolar/gpolar.hpp"

namespace {

using namespace gpolar;

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

void print_example(std::ostream& os) {
    const ExampleReport r = run_example();
    os << std::fixed << std::setprecision(6);
    os << "X =\n";
    write_matrix(os, r.X);
    os << "||X||_F = " << r.x_norm << '\n';
    os << "eta     = " << r.eta << '\n';
    os << "lambda  = " << r.lambda << '\n';
    os << "mu      = " << r.mu << '\n';
    os << "bound      upper      rel_error\n";
    for (std::size_t k = 0; k < r.upper.size(); ++k) {
        os << std::left << std::setw(10) << kUpperBoundNames[k] << ' ' << std::right << std::setw(9)
           << r.upper[k] << "  " << std::setprecision(4) << std::setw(8) << 100.0 * r.rel_errors[k] << "%\n"
           << std::setprecision(6);
    }
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw Error("cannot open " + path + " for writing");
    return file;
}

void finish_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return;
    file.flush();
    if (!file) throw Error("write failed: " + path);
}

void print_pair(std::ostream& os, const char* name, const BoundPair& b, const char* note = "") {
    os << std::left << std::setw(8) << name << std::right << " lower " << std::setw(14) << b.lower << "  upper "
       << std::setw(14) << b.upper << note << '\n';
}

void run_solve(const std::vector<std::string>& paths) {
    const ComplexMatrix A = read_matrix_file(paths[0]);
    const ComplexMatrix B = read_matrix_file(paths[1]);
    const ComplexMatrix C = read_matrix_file(paths[2]);
    const ComplexMatrix D = read_matrix_file(paths[3]);
    const StructuredProblem p = make_structured_problem(A, B, C, D);
    const ProblemAnalysis a = analyze_problem(p);
    const RangeConditions& h = a.conditions;

    std::cout << std::setprecision(10);
    std::cout << "X =\n";
    write_matrix(std::cout, a.solution.X);
    std::cout << "residual " << a.solution.residual << '\n';
    std::cout << "||X||_F  " << a.x_norm << '\n';
    std::cout << "hypotheses\n"
              << "  A^+AC = C  " << (h.c_in_range_a ? "yes" : "no") << '\n'
              << "  DBB^+ = D  " << (h.d_in_corange_b ? "yes" : "no") << '\n'
              << "  CBB^+ = C  " << (h.c_in_corange_b ? "yes" : "no") << '\n'
              << "  A^+AD = D  " << (h.d_in_range_a ? "yes" : "no") << '\n'
              << "  spectra of A and -B disjoint  " << (a.separation ? "yes" : "no") << '\n';
    std::cout << "upper bounds\n";
    if (a.ub_lrc) {
        std::cout << "  lrc    " << *a.ub_lrc << "  (eta " << a.separation->eta << ")\n";
    } else {
        std::cout << "  lrc    n/a (spectra overlap)\n";
    }
    std::cout << "  naive  " << a.ub_naive << '\n';
    const char* note = h.full() ? "" : "  (range hypotheses fail; not guaranteed)";
    print_pair(std::cout, "  pm", a.pm);
    if (a.abc_pair) {
        print_pair(std::cout, "  abc", *a.abc_pair, note);
        print_pair(std::cout, "  mu", *a.mu_pair, note);
    } else {
        std::cout << "  abc    n/a (A or B is zero)\n  mu     n/a (A or B is zero)\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized polar decomposition, structured Sylvester bounds and perturbation experiments"};
    app.require_subcommand(1);

    auto* example = app.add_subcommand("example", "Solve the 2x2 worked example and compare the five upper bounds");

    auto* mc = app.add_subcommand("montecarlo", "Count how often each upper bound beats the others");
    std::string test = "all";
    std::uint64_t trials = 100000;
    std::uint64_t seed = kDefaultSeed;
    int size = 3;
    std::string dist = "uniform";
    std::string out;
    mc->add_option("--test", test, "i, ii, iii, iv, v or all")
        ->check(CLI::IsMember({"i", "ii", "iii", "iv", "v", "all"}));
    mc->add_option("--trials", trials, "trials per test")->check(CLI::PositiveNumber);
    mc->add_option("--seed", seed, "base seed");
    mc->add_option("--size", size, "matrix dimension")->check(CLI::PositiveNumber);
    mc->add_option("--dist", dist, "uniform or gaussian")->check(CLI::IsMember({"uniform", "gaussian"}));
    mc->add_option("--out", out, "CSV output path (default stdout)");

    auto* sweep = app.add_subcommand("perturb-sweep", "Check the multiplicative perturbation bounds on random data");
    SweepConfig sweep_cfg;
    std::string sweep_out;
    sweep->add_option("--sizes", sweep_cfg.sizes, "matrix sizes")->delimiter(',')->check(CLI::PositiveNumber);
    sweep->add_option("--epsilons", sweep_cfg.epsilons, "perturbation magnitudes")->delimiter(',');
    sweep->add_option("--trials", sweep_cfg.trials, "trials per (size, epsilon)")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sweep_cfg.seed, "base seed");
    sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");

    auto* solve = app.add_subcommand("solve", "Solve AX + XB = AC + DB for matrices read from files");
    std::vector<std::string> paths;
    solve->add_option("files", paths, "A B C D matrix files")->required()->expected(4);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*example) {
            print_example(std::cout);
        } else if (*mc) {
            ExperimentConfig cfg;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.size = size;
            cfg.dist = dist == "gaussian" ? Distribution::ComplexGaussian : Distribution::UniformReal;
            std::vector<TestId> tests;
            if (test == "all") {
                tests.assign(kAllTests.begin(), kAllTests.end());
            } else {
                tests.push_back(*parse_test_id(test));
            }
            std::ofstream file;
            std::ostream& os = open_out(out, file);
            os << kMontecarloCsvHeader << '\n';
            for (TestId id : tests) {
                cfg.test = id;
                const TrialTally t = run_montecarlo(cfg);
                write_montecarlo_row(os, id, seed, t);
                if (!out.empty()) {
                    const double n = static_cast<double>(t.trials);
                    std::cout << "test " << to_string(id) << ": alpha/N " << t.alpha / n << "  beta/N "
                              << t.beta / n << "  gamma/N " << t.gamma / n << "  redraws " << t.redraws << '\n';
                }
            }
            finish_out(out, file);
        } else if (*sweep) {
            std::ofstream file;
            std::ostream& os = open_out(sweep_out, file);
            const SweepSummary s = run_perturb_sweep(sweep_cfg, os);
            finish_out(sweep_out, file);
            for (const auto& m : s.messages) std::cerr << "violation: " << m << '\n';
            std::cerr << s.rows << " rows, " << s.violations << " violations\n";
            if (s.violations > 0) return kExitNumerical;
        } else if (*solve) {
            run_solve(paths);
        }
    } catch (const NumericalFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
