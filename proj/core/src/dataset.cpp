#include "mgsda/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mgsda {

std::vector<int> LabeledDataset::group_sizes() const {
    std::vector<int> counts(n_groups, 0);
    for (int lab : labels) ++counts[lab - 1];
    return counts;
}

LabeledDataset make_dataset(Matrix X, std::vector<int> labels, int n_groups) {
    const auto N = X.rows();
    if (N == 0 || X.cols() == 0)
        throw std::invalid_argument("dataset: X must be non-empty");
    if (static_cast<Eigen::Index>(labels.size()) != N)
        throw std::invalid_argument("dataset: labels size " + std::to_string(labels.size()) +
                                    " does not match " + std::to_string(N) + " rows");
    if (n_groups < 2)
        throw std::invalid_argument("dataset: need at least 2 groups");
    if (!X.allFinite())
        throw std::invalid_argument("dataset: X contains non-finite values");

    std::vector<int> counts(n_groups, 0);
    for (int lab : labels) {
        if (lab < 1 || lab > n_groups)
            throw std::invalid_argument("dataset: label " + std::to_string(lab) +
                                        " outside 1.." + std::to_string(n_groups));
        ++counts[lab - 1];
    }
    for (int g = 0; g < n_groups; ++g)
        if (counts[g] == 0)
            throw std::invalid_argument("dataset: group " + std::to_string(g + 1) + " is empty");
    if (N <= n_groups)
        throw std::invalid_argument("dataset: need more observations than groups");

    return LabeledDataset{std::move(X), std::move(labels), n_groups};
}

LabeledDataset make_dataset(Matrix X, std::vector<int> labels) {
    int g = 0;
    for (int lab : labels) g = std::max(g, lab);
    return make_dataset(std::move(X), std::move(labels), g);
}

Standardization fit_standardization(const Matrix& X, Standardize mode) {
    Standardization s;
    s.mode = mode;
    if (mode != Standardize::Feature) return s;

    const auto N = X.rows();
    s.center = X.colwise().mean();
    Matrix centered = X.rowwise() - s.center.transpose();
    if (N > 1) {
        s.scale = (centered.array().square().colwise().sum() / double(N - 1)).sqrt();
    } else {
        s.scale = Vector::Zero(X.cols());
    }
    for (Eigen::Index j = 0; j < s.scale.size(); ++j)
        if (s.scale[j] <= 0.0) s.scale[j] = 1.0;
    return s;
}

Matrix apply_standardization(const Matrix& X, const Standardization& s) {
    switch (s.mode) {
    case Standardize::None:
        return X;
    case Standardize::Feature: {
        if (s.center.size() != X.cols())
            throw std::invalid_argument("standardize: column count mismatch");
        Matrix out = X.rowwise() - s.center.transpose();
        out.array().rowwise() /= s.scale.transpose().array();
        return out;
    }
    case Standardize::Row: {
        Matrix out = X;
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            double norm = out.row(i).norm();
            if (norm > 0.0) out.row(i) /= norm;
        }
        return out;
    }
    }
    throw std::logic_error("standardize: unknown mode");
}

} // namespace mgsda
