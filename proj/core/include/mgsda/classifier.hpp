#pragma once

#include <string>
#include <vector>

#include "mgsda/dataset.hpp"
#include "mgsda/linalg.hpp"
#include "mgsda/statistics.hpp"

namespace mgsda {

// Reduced-rank discriminant rule: assign x to the group minimizing
//
//   (x - xbar_g)^t V (V^t W V)^+ V^t (x - xbar_g) - 2 log(prior_g),
//
// with ties going to the lowest label. The pseudo-inverse is computed once
// from the eigendecomposition of V^t W V; eigenvalues below 1e-10 times the
// largest are treated as zero, so `rank` can fall short of G-1. Scores are
// evaluated as ||S x - S xbar_g||^2 with the whitened projection S stored in
// `proj`, which is all prediction needs besides means and priors.
struct DiscriminantModel {
    Matrix V;          // p x (G-1)
    Matrix proj;       // rank x p whitened projection
    Matrix group_means; // G x p (in the standardized coordinates)
    Matrix proj_means; // G x rank
    Vector priors;     // size G
    int rank = 0;
    bool degenerate = false; // V = 0 or rank 0: classify by largest prior
    Standardization standardization;
    std::vector<std::string> label_names; // optional, original label spellings

    int n_groups() const { return static_cast<int>(priors.size()); }
    int p() const { return static_cast<int>(group_means.cols()); }
};

// Assembles the rule from its raw ingredients (used directly when restoring a
// saved model; `within` is the pooled within-group covariance the
// pseudo-inverse is taken through).
DiscriminantModel make_model(const Matrix& V, const Matrix& group_means,
                             const Vector& priors, const Matrix& within,
                             Standardization standardization = {},
                             std::vector<std::string> label_names = {});

DiscriminantModel fit_model(const GroupStatistics& st, const Matrix& V,
                            Standardization standardization = {});
DiscriminantModel fit_model(const LabeledDataset& data, const Matrix& V,
                            Standardization standardization = {});

// Population Bayes-equivalent rule: V = Sigma_w^{-1} Delta with the same
// reduced-rank machinery, using true means and priors.
DiscriminantModel oracle_model(const PopulationSpec& spec);

// Raw rows in, standardization applied internally. Returns n x G score matrix.
Matrix scores(const DiscriminantModel& model, const Matrix& X);

// Predicted labels 1..G (argmin score per row, ties to the lowest label).
std::vector<int> classify(const DiscriminantModel& model, const Matrix& X);

double error_rate(const std::vector<int>& predicted,
                  const std::vector<int>& truth);

} // namespace mgsda
