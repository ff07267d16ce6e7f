#include <doctest.h>

#include <mgsda/rng.hpp>
#include <mgsda/solver.hpp>
#include <mgsda/statistics.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace mgsda;

namespace {

LabeledDataset gaussian_dataset(Rng& rng, int groups, int p, int per_group,
                                double shift = 0.8) {
    std::normal_distribution<double> normal;
    Matrix X(groups * per_group, p);
    std::vector<int> labels(groups * per_group);
    int row = 0;
    for (int g = 0; g < groups; ++g)
        for (int i = 0; i < per_group; ++i, ++row) {
            labels[row] = g + 1;
            for (int j = 0; j < p; ++j)
                X(row, j) = normal(rng) + (j < 3 ? shift * g : 0.0);
        }
    return make_dataset(X, labels);
}

double w_form_objective(const GroupStatistics& st, const Matrix& V,
                        double lambda) {
    int m = static_cast<int>(V.cols());
    double quad = 0.5 * (V.transpose() * st.W * V).trace();
    Matrix R = st.D.transpose() * V - Matrix::Identity(m, m);
    double fit = 0.5 * R.squaredNorm();
    double pen = 0.0;
    for (int j = 0; j < V.rows(); ++j) pen += lambda * V.row(j).norm();
    return quad + fit + pen;
}

} // namespace

TEST_CASE("lambda_max is the largest row norm of D") {
    Matrix D(2, 2);
    D << 3, 4,
         0, 1;
    CHECK(lambda_max(D) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("row update soft-thresholds the residual") {
    Eigen::RowVectorXd out(1);

    Eigen::RowVectorXd r1(1);
    r1 << 3.0;
    detail::standard_row_update(r1, 2.0, 1.0, out);
    CHECK(out(0) == doctest::Approx(1.0).epsilon(1e-15));

    Eigen::RowVectorXd r2(2);
    r2 << 3.0, 4.0;
    Eigen::RowVectorXd out2(2);
    detail::standard_row_update(r2, 1.0, 5.0, out2);
    CHECK(out2.isZero(0.0)); // at the boundary the row is dropped

    detail::standard_row_update(r2, 1.0, 4.0, out2);
    CHECK(out2(0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(out2(1) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("at lambda >= lambda_max the solution is zero in one sweep") {
    Rng rng(derive_seed(21, 0));
    auto st = group_statistics(gaussian_dataset(rng, 3, 8, 12));
    auto prob = make_problem(st);
    double lmax = lambda_max(prob.D);
    for (double f : {1.0, 1.1, 2.0}) {
        auto sol = solve(prob, f * lmax);
        CHECK(sol.converged);
        CHECK(sol.sweeps == 1);
        CHECK(sol.V.isZero(0.0));
        CHECK(sol.support_size() == 0);
        CHECK(sol.objective ==
              doctest::Approx((st.n_groups - 1) / 2.0).epsilon(1e-15));
    }
}

TEST_CASE("objective at zero equals (G-1)/2 and heads the trace") {
    Rng rng(derive_seed(22, 0));
    auto st = group_statistics(gaussian_dataset(rng, 3, 6, 10));
    auto prob = make_problem(st);
    Matrix zero = Matrix::Zero(6, 2);
    CHECK(objective_value(prob, zero, 0.3) == 1.0);
    auto sol = solve(prob, 0.3 * lambda_max(prob.D));
    REQUIRE(!sol.objective_trace.empty());
    CHECK(sol.objective_trace.front() == 1.0);
}

TEST_CASE("T-form and W-form objectives agree") {
    Rng rng(derive_seed(23, 0));
    auto st = group_statistics(gaussian_dataset(rng, 3, 7, 11));
    auto prob = make_problem(st);
    double lambda = 0.25 * lambda_max(prob.D);
    auto sol = solve(prob, lambda);

    double t_form = objective_value(prob, sol.V, lambda);
    double w_form = w_form_objective(st, sol.V, lambda);
    CHECK(std::abs(t_form - w_form) <= 1e-8 * (1.0 + std::abs(w_form)));

    std::normal_distribution<double> normal;
    Matrix V(7, 2);
    for (int i = 0; i < V.size(); ++i) V(i / 2, i % 2) = normal(rng);
    CHECK(std::abs(objective_value(prob, V, lambda) -
                   w_form_objective(st, V, lambda)) <=
          1e-8 * (1.0 + std::abs(w_form_objective(st, V, lambda))));
}

TEST_CASE("objective trace is monotone nonincreasing") {
    Rng rng(derive_seed(24, 0));
    auto st = group_statistics(gaussian_dataset(rng, 3, 12, 15));
    auto prob = make_problem(st);
    for (double f : {0.6, 0.3, 0.1}) {
        auto sol = solve(prob, f * lambda_max(prob.D));
        CHECK(sol.converged);
        const auto& tr = sol.objective_trace;
        for (size_t k = 1; k < tr.size(); ++k)
            CHECK(tr[k] <= tr[k - 1] + 1e-12 * (1.0 + std::abs(tr[k - 1])));
    }
}

TEST_CASE("converged solutions carry a small KKT residual") {
    Rng rng(derive_seed(25, 0));
    auto st = group_statistics(gaussian_dataset(rng, 2, 9, 14));
    auto prob = make_problem(st);
    SolveOptions opts;
    opts.tol = 1e-8;
    auto sol = solve(prob, 0.2 * lambda_max(prob.D), opts);
    REQUIRE(sol.converged);
    CHECK(sol.kkt <= 1e-8);
    CHECK(kkt_residual(prob, sol.V, sol.lambda) <= 1e-7);
}

TEST_CASE("lambda = 0 recovers the dense solve T^{-1} D") {
    Rng rng(derive_seed(26, 0));
    for (int rep = 0; rep < 5; ++rep) {
        int p = 3 + rep;
        auto st = group_statistics(gaussian_dataset(rng, 3, p, p + 12));
        auto prob = make_problem(st);
        SolveOptions opts;
        opts.tol = 1e-12;
        opts.max_sweeps = 20000;
        auto sol = solve(prob, 0.0, opts);
        REQUIRE(sol.converged);
        Matrix dense = prob.T.ldlt().solve(prob.D);
        CHECK((sol.V - dense).norm() <= 1e-8 * (1.0 + dense.norm()));
    }
}

TEST_CASE("warm and cold starts land on the same objective") {
    Rng rng(derive_seed(27, 0));
    auto st = group_statistics(gaussian_dataset(rng, 3, 10, 13));
    auto prob = make_problem(st);
    auto path = solve_path(prob);
    REQUIRE(path.solutions.size() == path.lambdas.size());
    const auto& warm = path.solutions.back();
    auto cold = solve(prob, warm.lambda);
    CHECK(std::abs(warm.objective - cold.objective) <=
          1e-6 * (1.0 + std::abs(cold.objective)));
}

TEST_CASE("default grid spans [0.05, 1] lambda_max descending") {
    auto grid = default_lambda_grid(8.0);
    REQUIRE(grid.size() == 20);
    CHECK(grid.front() == 8.0);
    CHECK(grid.back() == doctest::Approx(0.4).epsilon(1e-15));
    for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] < grid[i - 1]);

    auto degenerate = default_lambda_grid(0.0);
    REQUIRE(degenerate.size() == 1);
    CHECK(degenerate[0] == 0.0);
}

TEST_CASE("solve_path validates its grid") {
    Rng rng(derive_seed(28, 0));
    auto st = group_statistics(gaussian_dataset(rng, 2, 4, 8));
    auto prob = make_problem(st);
    CHECK_THROWS(solve_path(prob, std::vector<double>{0.1, 0.5})); // ascending
    CHECK_THROWS(solve_path(prob, std::vector<double>{0.5, -0.1})); // negative
    CHECK_THROWS(solve_path(prob, std::vector<double>{}));
}

TEST_CASE("constant features are pinned to zero rows") {
    Rng rng(derive_seed(29, 0));
    auto data = gaussian_dataset(rng, 2, 5, 10);
    Matrix X = data.X;
    X.col(2).setConstant(5.0);
    auto st = group_statistics(make_dataset(X, data.labels));
    auto prob = make_problem(st);
    auto sol = solve(prob, 0.1 * lambda_max(prob.D));
    REQUIRE(std::find(sol.pinned_rows.begin(), sol.pinned_rows.end(), 2) !=
            sol.pinned_rows.end());
    CHECK(sol.V.row(2).isZero(0.0));
    CHECK(sol.converged);
}

TEST_CASE("solver rejects malformed problems") {
    PenalizedProblem prob;
    prob.T = Matrix::Identity(3, 2);
    prob.D = Matrix::Ones(3, 1);
    CHECK_THROWS(solve(prob, 0.1)); // non-square T

    prob.T = Matrix::Identity(3, 3);
    prob.T(0, 1) = 0.5; // asymmetric
    CHECK_THROWS(solve(prob, 0.1));

    prob.T = Matrix::Identity(3, 3);
    prob.D = Matrix::Ones(2, 1); // row mismatch
    CHECK_THROWS(solve(prob, 0.1));

    prob.D = Matrix::Ones(3, 1);
    CHECK_THROWS(solve(prob, -0.5)); // negative penalty
}

TEST_CASE("support reports the nonzero rows") {
    Rng rng(derive_seed(30, 0));
    auto st = group_statistics(gaussian_dataset(rng, 2, 8, 20, 1.5));
    auto prob = make_problem(st);
    auto sol = solve(prob, 0.5 * lambda_max(prob.D));
    auto sup = sol.support();
    CHECK(sup.size() == static_cast<size_t>(sol.support_size()));
    for (int j : sup) CHECK(!sol.V.row(j).isZero(0.0));
    for (int j = 0; j < 8; ++j)
        if (std::find(sup.begin(), sup.end(), j) == sup.end())
            CHECK(sol.V.row(j).isZero(0.0));
}
