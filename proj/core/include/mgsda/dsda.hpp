#pragma once

#include "mgsda/dataset.hpp"
#include "mgsda/linalg.hpp"

namespace mgsda {

// Coordinate-descent lasso for (1/(2N)) ||y - X b||_2^2 + lambda ||b||_1.
// Callers are expected to pre-center X and y if an intercept is wanted.
// Independent of the block solver: works on the raw data matrix and maintains
// an N-vector residual.
Vector lasso_cd(const Matrix& X, const Vector& y, double lambda,
                double tol = 1e-12, int max_iter = 100000);

// For G = 2 the group-penalized discriminant estimate reduces to a lasso
// regression of class codes on the features. With the total-covariance
// quadratic T = Xc^t Xc / N, codes +N/n1 (group 1) and -N/n2 (group 2), and
// c = sqrt(n1 n2) / N, the identity is
//
//   V(lambda) = c * beta(lambda / c).
//
// Both sides are computed from scratch by unrelated algorithms, so agreement
// validates each against the other.
struct DsdaCheck {
    Vector v_group;  // block-descent solution of the penalized problem
    Vector v_lasso;  // c * beta(lambda / c) from coordinate descent
    double c = 0.0;  // sqrt(n1 n2) / N
    double max_abs_diff = 0.0;
};

DsdaCheck dsda_equivalence_check(const LabeledDataset& data, double lambda,
                                 double tol = 1e-10);

} // namespace mgsda
