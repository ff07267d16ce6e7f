#include "mgsda/cv.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mgsda/classifier.hpp"
#include "mgsda/rng.hpp"
#include "mgsda/statistics.hpp"

namespace mgsda {

std::vector<std::vector<int>> stratified_folds(const std::vector<int>& labels,
                                               int n_groups, int folds,
                                               std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("cv: need at least 2 folds");
    std::vector<std::vector<int>> by_group(n_groups);
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_group[labels[i] - 1].push_back(static_cast<int>(i));

    std::vector<std::vector<int>> fold_members(folds);
    for (int g = 0; g < n_groups; ++g) {
        auto& idx = by_group[g];
        if (static_cast<int>(idx.size()) < folds)
            throw std::invalid_argument("cv: group smaller than fold count");
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(g)));
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t i = 0; i < idx.size(); ++i)
            fold_members[(i + g) % folds].push_back(idx[i]);
    }
    for (auto& f : fold_members) std::sort(f.begin(), f.end());
    return fold_members;
}

namespace {

LabeledDataset subset(const LabeledDataset& data, const std::vector<int>& rows) {
    Matrix X(rows.size(), data.p());
    std::vector<int> labels(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        X.row(i) = data.X.row(rows[i]);
        labels[i] = data.labels[rows[i]];
    }
    return make_dataset(std::move(X), std::move(labels), data.n_groups);
}

} // namespace

CvReport cross_validate(const LabeledDataset& data, const CvOptions& options) {
    const auto counts = data.group_sizes();
    const int min_group = *std::min_element(counts.begin(), counts.end());
    if (min_group < 2)
        throw std::invalid_argument("cv: every group needs at least 2 members");
    if (options.folds < 2)
        throw std::invalid_argument("cv: need at least 2 folds");

    CvReport report;
    report.folds_used = std::min(options.folds, min_group);
    report.folds_reduced = report.folds_used < options.folds;
    const int K = report.folds_used;

    const GroupStatistics full_stats = group_statistics(data);
    if (options.lambdas.empty()) {
        report.lambdas = default_lambda_grid(
            lambda_max(full_stats.D), options.grid_size, options.grid_min_frac);
    } else {
        report.lambdas = options.lambdas;
        for (std::size_t i = 1; i < report.lambdas.size(); ++i)
            if (report.lambdas[i] > report.lambdas[i - 1])
                throw std::invalid_argument("cv: lambda grid must be descending");
    }
    const int L = static_cast<int>(report.lambdas.size());

    const auto folds =
        stratified_folds(data.labels, data.n_groups, K, options.seed);

    report.fold_errors = Matrix::Zero(K, L);
    report.converged.setZero(K, L);
    report.fold_sizes.resize(K);

    SolveOptions solve_opts;
    solve_opts.tol = options.tol;
    solve_opts.max_sweeps = options.max_sweeps;

    std::vector<char> held(data.n());
    for (int k = 0; k < K; ++k) {
        const auto& test_rows = folds[k];
        report.fold_sizes[k] = static_cast<int>(test_rows.size());

        std::fill(held.begin(), held.end(), 0);
        for (int i : test_rows) held[i] = 1;
        std::vector<int> train_rows;
        train_rows.reserve(data.n() - test_rows.size());
        for (int i = 0; i < data.n(); ++i)
            if (!held[i]) train_rows.push_back(i);

        const LabeledDataset train = subset(data, train_rows);
        const LabeledDataset test = subset(data, test_rows);
        const GroupStatistics st = group_statistics(train);
        const SolutionPath path =
            solve_path(make_problem(st), report.lambdas, solve_opts);

        for (int l = 0; l < L; ++l) {
            const DiscriminantModel model = fit_model(st, path.solutions[l].V);
            report.fold_errors(k, l) =
                error_rate(classify(model, test.X), test.labels);
            report.converged(k, l) = path.solutions[l].converged ? 1 : 0;
        }
    }

    report.mean_errors.resize(L);
    for (int l = 0; l < L; ++l)
        report.mean_errors[l] = report.fold_errors.col(l).mean();

    // Grid is descending, so the first minimizer is the largest lambda.
    report.best_index = 0;
    for (int l = 1; l < L; ++l)
        if (report.mean_errors[l] < report.mean_errors[report.best_index])
            report.best_index = l;
    report.best_lambda = report.lambdas[report.best_index];

    const SolutionPath full_path = solve_path(
        make_problem(full_stats),
        std::vector<double>(report.lambdas.begin(),
                            report.lambdas.begin() + report.best_index + 1),
        solve_opts);
    report.chosen_fit = full_path.solutions.back();
    report.chosen_support_size = report.chosen_fit.support_size();
    return report;
}

} // namespace mgsda
