#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mgsda/cv.hpp"
#include "mgsda/dataset.hpp"
#include "mgsda/rng.hpp"
#include "mgsda/statistics.hpp"

namespace mgsda {

enum class CovStructure { Identity, Equicorrelation, Autoregressive, Bernoulli, FromFile };

const char* to_string(CovStructure s);
CovStructure cov_structure_from_string(const std::string& name);

// A synthetic scenario: G groups of n normal observations in dimension p whose
// means differ on the first s coordinates (scaled by mean_scale), sharing one
// of the named within-group covariance structures. The Equicorrelation,
// Autoregressive and Bernoulli recipes use the fixed constants 0.5, 0.8 and
// 0.5 * Bernoulli(0.2) respectively.
struct SimScenario {
    CovStructure structure = CovStructure::Identity;
    int p = 100;
    int s = 10; // must be even when G = 3 (means use +/- blocks of s/2)
    int G = 2;  // 2 or 3 for built-in means
    int n = 100; // per-group training size; test sets match it
    double mean_scale = 1.0; // 0 gives the null scenario
    std::uint64_t seed = 1;
    Matrix sigma_file;        // within-group covariance for FromFile
    double blend_alpha = 0.0; // when > 0, use (1-a) * sigma_file + a * I
};

void validate(const SimScenario& sc);

// Sigma_W per the named recipe. The Bernoulli draw uses a sub-seed derived
// from scenario.seed, so the matrix is fixed across replications.
Matrix build_covariance(const SimScenario& sc);

Matrix build_means(const SimScenario& sc); // G x p

PopulationSpec population_spec(const SimScenario& sc); // equal priors

// n_per_group observations from each N(mu_g, Sigma_W), group-major order.
LabeledDataset sample_dataset(const PopulationSpec& spec, int n_per_group,
                              Rng& rng);

// Convenience single draw from the scenario's own seed stream.
LabeledDataset sample_dataset(const SimScenario& sc);

// Coordinates whose true group means are all equal (0-based); selected
// features there are false positives.
std::vector<int> null_coordinates(const SimScenario& sc);

int count_false_positives(const std::vector<int>& support, const SimScenario& sc);

struct ExperimentConfig {
    SimScenario scenario;
    int replications = 25;
    CvOptions cv; // fold seed is overridden per replication
    // Called after each replication with (completed, total); may be empty.
    std::function<void(int, int)> progress;
};

struct ReplicationResult {
    int rep = 0;
    bool failed = false;
    std::string error;
    double test_error_pct = 0.0;
    double oracle_error_pct = 0.0; // Bayes-equivalent rule on the same test set
    int n_selected = 0;
    int n_false_positives = 0;
    double chosen_lambda = 0.0;
    bool chosen_converged = false;
    bool cv_all_converged = false; // every fold x lambda cell converged
};

struct ExperimentReport {
    SimScenario scenario;
    int replications = 0;
    std::vector<ReplicationResult> reps;
    int n_failed = 0;
    // Aggregates over successful replications (sample standard deviations).
    double mean_error_pct = 0.0, sd_error_pct = 0.0;
    double mean_oracle_pct = 0.0, sd_oracle_pct = 0.0;
    double mean_selected = 0.0, sd_selected = 0.0;
    double mean_false_positives = 0.0, sd_false_positives = 0.0;
};

// Per replication: fresh train and test draws (test matches training size),
// cross-validated lambda choice on the training data, full refit, and test
// metrics. Failures are recorded on the replication, not thrown. Deterministic
// in (scenario, seed): every replication uses derived sub-seeds.
ExperimentReport run_experiment(const ExperimentConfig& config);

} // namespace mgsda
