// Acceptance gate: one line per criterion, nonzero exit if any fails.
//
// Criteria 1-6 are desk-scale Monte Carlo reproductions (25 replications,
// fixed seed) checked against published target windows; 7-13 are exact
// property suites over randomized instances; 14 is a planted support
// recovery study. Runs in a few minutes on one core.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <mgsda/rng.hpp>
#include <mgsda/simlab.hpp>
#include <mgsda/solver.hpp>
#include <mgsda/verify.hpp>

using namespace mgsda;

namespace {

int failures = 0;

void line(int idx, bool ok, const std::string& text) {
    std::printf("%s %2d  %s\n", ok ? "PASS" : "FAIL", idx, text.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string window(const char* what, double got, double target, double tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.2f (target %.2f +- %.2f)", what, got,
                  target, tol);
    return buf;
}

std::string range(const char* what, double got, double lo, double hi) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.2f (range [%.0f, %.0f])", what, got,
                  lo, hi);
    return buf;
}

ExperimentReport run_scenario(CovStructure structure, int groups,
                              double mean_scale) {
    ExperimentConfig config;
    config.scenario.structure = structure;
    config.scenario.p = 100;
    config.scenario.s = 10;
    config.scenario.G = groups;
    config.scenario.n = 100;
    config.scenario.mean_scale = mean_scale;
    config.scenario.seed = 1;
    config.replications = 25;
    return run_experiment(config);
}

const CheckResult* find_check(const SuiteReport& suite, const char* name) {
    for (const auto& c : suite.checks)
        if (c.name == name) return &c;
    return nullptr;
}

bool checks_pass(const SuiteReport& suite,
                 const std::vector<const char*>& names, std::string& detail) {
    bool ok = true;
    for (const char* name : names) {
        const CheckResult* c = find_check(suite, name);
        if (!c) {
            detail += std::string(" [missing check '") + name + "']";
            ok = false;
            continue;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, " %s: %.3g (limit %.3g);", c->name.c_str(),
                      c->value, c->threshold);
        detail += buf;
        ok = ok && c->passed;
    }
    return ok;
}

} // namespace

int main() {
    // -------- Monte Carlo reproductions (shared experiments)
    const auto identity_g2 = run_scenario(CovStructure::Identity, 2, 1.0);
    line(1,
         identity_g2.n_failed == 0 &&
             std::abs(identity_g2.mean_error_pct - 6.65) <= 1.5 &&
             std::abs(identity_g2.mean_oracle_pct - 5.58) <= 1.0,
         window("identity G=2 error", identity_g2.mean_error_pct, 6.65, 1.5) +
             "; " +
             window("oracle", identity_g2.mean_oracle_pct, 5.58, 1.0));

    const auto equicorr = run_scenario(CovStructure::Equicorrelation, 2, 1.0);
    line(2,
         equicorr.n_failed == 0 &&
             std::abs(equicorr.mean_error_pct - 3.32) <= 1.0,
         window("equicorrelation error", equicorr.mean_error_pct, 3.32, 1.0));

    const auto ar = run_scenario(CovStructure::Autoregressive, 2, 1.0);
    line(3,
         ar.n_failed == 0 && std::abs(ar.mean_error_pct - 19.02) <= 3.0,
         window("autoregressive error", ar.mean_error_pct, 19.02, 3.0));

    const auto identity_g3 = run_scenario(CovStructure::Identity, 3, 1.0);
    line(4,
         identity_g3.n_failed == 0 &&
             std::abs(identity_g3.mean_error_pct - 9.11) <= 1.5 &&
             std::abs(identity_g3.mean_oracle_pct - 7.83) <= 1.2,
         window("identity G=3 error", identity_g3.mean_error_pct, 9.11, 1.5) +
             "; " +
             window("oracle", identity_g3.mean_oracle_pct, 7.83, 1.2));

    line(5,
         identity_g2.mean_selected >= 10.0 &&
             identity_g2.mean_selected <= 35.0 &&
             identity_g2.mean_false_positives >= 2.0 &&
             identity_g2.mean_false_positives <= 20.0,
         range("selected features", identity_g2.mean_selected, 10, 35) + "; " +
             range("false positives", identity_g2.mean_false_positives, 2, 20));

    const auto null_sweep = run_scenario(CovStructure::Identity, 2, 0.0);
    line(6,
         null_sweep.n_failed == 0 &&
             std::abs(null_sweep.mean_error_pct - 50.0) <= 5.0,
         window("null-signal error", null_sweep.mean_error_pct, 50.0, 5.0));

    // -------- property suites
    const std::uint64_t seed = 42;
    {
        const auto suite = decomposition_suite(derive_seed(seed, 1), 100);
        std::string detail;
        bool ok = checks_pass(suite,
                              {"B equals D D^t (rel Frobenius)", "T symmetric",
                               "W positive semidefinite", "f(0) = (G-1)/2"},
                              detail);
        line(7, ok, "scatter decomposition over 100 datasets:" + detail);
    }

    const auto kkt = kkt_suite(derive_seed(seed, 2), 100);
    {
        std::string detail;
        bool ok = checks_pass(
            kkt, {"all solves converged", "KKT residual at convergence"},
            detail);
        line(8, ok, "KKT certification over 100 problems:" + detail);
    }
    {
        std::string detail;
        bool ok = checks_pass(kkt,
                              {"V = 0 at lambda >= lambda_max",
                               "lambda = 0 matches dense T^{-1} D (rel)"},
                              detail);
        line(9, ok, "penalty endpoints:" + detail);
    }
    {
        std::string detail;
        bool ok = checks_pass(kkt, {"objective trace monotone"}, detail);
        line(10, ok, "per-sweep descent on every logged solve:" + detail);
    }
    {
        const auto suite = invariance_suite(derive_seed(seed, 3), 20, 1000);
        std::string detail;
        bool ok =
            checks_pass(suite, {"labels invariant under V R / V M"}, detail);
        line(11, ok, "right-invariance on 20 models x 1000 points:" + detail);
    }
    {
        const auto suite = eigen_equivalence_suite(derive_seed(seed, 4), 20);
        std::string detail;
        bool ok = checks_pass(suite,
                              {"principal angles (sin, max)",
                               "eigenvalue map rho = gamma/(1-gamma)"},
                              detail);
        line(12, ok, "pencil equivalence on 20 instances:" + detail);
    }
    {
        const auto suite = dsda_suite(derive_seed(seed, 5), 20);
        std::string detail;
        bool ok = checks_pass(
            suite, {"two-group solution matches rescaled lasso (max abs)"},
            detail);
        line(13, ok, "two-group lasso reduction, 20 instances x 3 penalties:" +
                         detail);
    }

    // -------- planted support recovery
    {
        SimScenario sc;
        sc.p = 50;
        sc.s = 5;
        sc.n = 200; // N = 400 in total
        sc.mean_scale = 1.0;
        const std::vector<int> truth{0, 1, 2, 3, 4};
        int exact = 0;
        const int runs = 20;
        for (int r = 0; r < runs; ++r) {
            sc.seed = 1000 + r;
            const LabeledDataset data = sample_dataset(sc);
            const PenalizedProblem prob = make_problem(group_statistics(data));
            const SolutionPath path = solve_path(prob);
            for (const auto& sol : path.solutions)
                if (sol.support() == truth) {
                    ++exact;
                    break;
                }
        }
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "exact support recovered on the path in %d/%d runs "
                      "(need >= 18)",
                      exact, runs);
        line(14, exact >= 18, buf);
    }

    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all 14 criteria passed\n");
    return 0;
}
