#pragma once

#include <vector>

#include "mgsda/dataset.hpp"
#include "mgsda/linalg.hpp"

namespace mgsda {

// Sufficient statistics for the penalized discriminant problem.
struct GroupStatistics {
    int n_groups = 0;
    int n_total = 0;
    std::vector<int> counts; // size G
    Vector priors;           // n_g / N
    Matrix group_means;      // G x p
    Vector overall_mean;     // size p
    Matrix W;                // p x p pooled within-group covariance (divisor N - G)
    Matrix D;                // p x (G-1) mean contrasts
    Matrix T;                // W + D D^t, symmetrized
};

GroupStatistics group_statistics(const LabeledDataset& data);

// Helmert-style successive mean contrasts. Column r (r = 1..G-1) is
//
//   sqrt(w_{r+1}) * sum_{i<=r} w_i (m_i - m_{r+1}) / sqrt(s_r s_{r+1}),
//
// where m_i is row i of `means` and s_r = w_1 + ... + w_r. Weights must be
// positive. Scaling: contrast_matrix(c*w, M) = sqrt(c) * contrast_matrix(w, M),
// so with w = n/N and sample means this yields D, and with class probabilities
// and population means it yields the population contrasts Delta.
Matrix contrast_matrix(const Vector& weights, const Matrix& means);

// Definitional between-group scatter (1/N) sum_g n_g (xbar_g - xbar)(...)^t.
// Computed directly from the group means, not via D; equals D D^t up to
// round-off.
Matrix between_scatter(const LabeledDataset& data);

// A Gaussian mixture description of the generating process; used by the
// simulation lab and by population-level identities.
struct PopulationSpec {
    Vector priors; // size G, positive, sums to 1
    Matrix means;  // G x p
    Matrix sigma_w; // p x p common within-group covariance
};

void validate(const PopulationSpec& spec);

Matrix population_contrasts(const PopulationSpec& spec);       // Delta, p x (G-1)
Matrix population_between_scatter(const PopulationSpec& spec); // Sigma_B, p x p

} // namespace mgsda
