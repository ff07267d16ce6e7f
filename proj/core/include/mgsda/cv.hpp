#pragma once

#include <cstdint>
#include <vector>

#include "mgsda/dataset.hpp"
#include "mgsda/solver.hpp"

namespace mgsda {

struct CvOptions {
    int folds = 5;
    std::uint64_t seed = 0; // drives the within-group shuffles
    double tol = 1e-6;
    int max_sweeps = 1000;
    std::vector<double> lambdas; // empty: default grid from full-data lambda_max
    int grid_size = 20;
    double grid_min_frac = 0.05;
};

struct CvReport {
    std::vector<double> lambdas; // descending, shared across folds
    Matrix fold_errors;          // K x L held-out error rates
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> converged; // K x L, 0/1
    std::vector<double> mean_errors; // unweighted mean over folds, size L
    std::vector<int> fold_sizes;     // held-out count per fold
    int folds_used = 0;
    bool folds_reduced = false; // requested K exceeded the smallest group
    int best_index = 0;         // smallest index (largest lambda) minimizing mean error
    double best_lambda = 0.0;
    Solution chosen_fit; // full-data path solution at best_lambda
    int chosen_support_size = 0;
};

// Deals each group's shuffled indices round-robin across K folds, so every
// fold holds between floor(n_g/K) and ceil(n_g/K) members of each group.
// Groups start at staggered fold offsets to spread the remainders.
std::vector<std::vector<int>> stratified_folds(const std::vector<int>& labels,
                                               int n_groups, int folds,
                                               std::uint64_t seed);

// K-fold cross-validated lambda selection over a warm-started path per fold.
// If the smallest group has fewer members than `folds`, K is reduced to that
// size (folds_reduced is set); fewer than 2 per group is an error.
CvReport cross_validate(const LabeledDataset& data, const CvOptions& options = {});

} // namespace mgsda
