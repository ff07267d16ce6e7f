#pragma once

#include <vector>

#include "mgsda/linalg.hpp"

namespace mgsda {

// A labeled sample: rows of X are observations, labels[i] in {1, ..., n_groups}.
// Every group must be non-empty and N must exceed the number of groups so the
// pooled within-group covariance has at least one degree of freedom.
struct LabeledDataset {
    Matrix X;                // N x p
    std::vector<int> labels; // size N, values 1..n_groups
    int n_groups = 0;

    int n() const { return static_cast<int>(X.rows()); }
    int p() const { return static_cast<int>(X.cols()); }

    // Observation count per group, indexed 0..n_groups-1 for labels 1..n_groups.
    std::vector<int> group_sizes() const;
};

// Validates invariants and returns the dataset; throws std::invalid_argument on
// bad shape, labels outside 1..G, an empty group, non-finite entries, or N <= G.
LabeledDataset make_dataset(Matrix X, std::vector<int> labels, int n_groups);

// Infers n_groups as the max label.
LabeledDataset make_dataset(Matrix X, std::vector<int> labels);

// Standardization applied to features before fitting. Replicated at predict
// time from stored centers/scales.
enum class Standardize { None, Feature, Row };

struct Standardization {
    Standardize mode = Standardize::None;
    Vector center; // size p (Feature mode), empty otherwise
    Vector scale;  // size p (Feature mode), empty otherwise
};

// Computes the transform from data (no-op except in Feature mode, which centers
// each column and divides by its sample standard deviation; constant columns get
// scale 1 so they pass through centered but unscaled).
Standardization fit_standardization(const Matrix& X, Standardize mode);

// Applies a fitted transform to new rows (Row mode normalizes each row to unit
// Euclidean norm; zero rows are left as-is).
Matrix apply_standardization(const Matrix& X, const Standardization& s);

} // namespace mgsda
