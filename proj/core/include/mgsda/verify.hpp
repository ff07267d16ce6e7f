#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mgsda {

// Property suites over randomly generated instances. Each check aggregates a
// worst case over the instances, so a suite stays readable: one line per
// property with the observed extreme against its threshold.
struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;     // observed worst case
    double threshold = 0.0; // what it was compared against
};

struct SuiteReport {
    std::string name;
    std::vector<CheckResult> checks;
    bool passed() const;
};

// B = D D^t, T symmetry, W positive semidefiniteness, f(0) = (G-1)/2.
SuiteReport decomposition_suite(std::uint64_t seed, int n_datasets = 100);

// Solver optimality: KKT residuals at convergence, monotone objective traces,
// exact zero at lambda >= lambda_max, agreement with the dense solve T^{-1} D
// at lambda = 0. `corrupt_update` flips the sign of lambda inside the row
// update (via the solver's test hook); the suite must then fail, which is the
// mutation check that these oracles can actually see a broken update.
SuiteReport kkt_suite(std::uint64_t seed, int n_problems = 100,
                      bool corrupt_update = false);

// Classification is unchanged under V -> V R (orthogonal) and V -> V M
// (invertible); the solver commutes with feature permutations and data
// rescaling.
SuiteReport invariance_suite(std::uint64_t seed, int n_models = 20,
                             int n_points = 1000);

// The pencils (Sigma_B, Sigma_W) and (Sigma_B, Sigma_W + Sigma_B) share the
// leading eigenspace; eigenvalues map by rho = gamma / (1 - gamma).
SuiteReport eigen_equivalence_suite(std::uint64_t seed, int n_instances = 20);

// Two-group solutions match the independent lasso reduction after rescaling.
SuiteReport dsda_suite(std::uint64_t seed, int n_instances = 20);

std::vector<SuiteReport> run_all_suites(std::uint64_t seed);

} // namespace mgsda
