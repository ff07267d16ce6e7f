#include <doctest.h>

#include <mgsda/classifier.hpp>
#include <mgsda/rng.hpp>
#include <mgsda/solver.hpp>
#include <mgsda/statistics.hpp>

#include "helpers.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace mgsda;

namespace {

Matrix random_pd(Rng& rng, int p) {
    std::normal_distribution<double> normal;
    Matrix A(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) A(i, j) = normal(rng);
    Matrix S = A * A.transpose() / p + 0.5 * Matrix::Identity(p, p);
    return (S + S.transpose()) / 2.0;
}

} // namespace

TEST_CASE("hand-computed scores for a one-dimensional model") {
    Matrix V(1, 1);
    V << 1.0;
    Matrix means(2, 1);
    means << 0.0, 2.0;
    Matrix W(1, 1);
    W << 1.0;
    auto model = make_model(V, means, mgsda_test::vec({0.5, 0.5}), W);
    REQUIRE(!model.degenerate);
    CHECK(model.rank == 1);

    Matrix x(1, 1);
    x << 0.0;
    Matrix s = scores(model, x);
    double c = -2.0 * std::log(0.5);
    CHECK(s(0, 0) == doctest::Approx(c).epsilon(1e-12));
    CHECK(s(0, 1) == doctest::Approx(4.0 + c).epsilon(1e-12));
    CHECK(classify(model, x)[0] == 1);
}

TEST_CASE("a point at a group mean scores exactly -2 log prior") {
    Rng rng(derive_seed(41, 0));
    Matrix W = random_pd(rng, 3);
    Matrix V(3, 1);
    V << 1.0, -0.5, 0.25;
    Matrix means(2, 3);
    means << 1, 2, 3,
             -1, 0, 1;
    auto model = make_model(V, means, mgsda_test::vec({0.25, 0.75}), W);
    Matrix s = scores(model, means);
    CHECK(s(0, 0) == doctest::Approx(-2.0 * std::log(0.25)).epsilon(1e-10));
    CHECK(s(1, 1) == doctest::Approx(-2.0 * std::log(0.75)).epsilon(1e-10));
}

TEST_CASE("equidistant points go to the higher-prior group") {
    Matrix V(1, 1);
    V << 1.0;
    Matrix means(2, 1);
    means << -1.0, 1.0;
    Matrix W(1, 1);
    W << 1.0;
    auto model = make_model(V, means, mgsda_test::vec({0.9, 0.1}), W);
    Matrix x(1, 1);
    x << 0.0;
    CHECK(classify(model, x)[0] == 1);

    auto flipped = make_model(V, means, mgsda_test::vec({0.1, 0.9}), W);
    CHECK(classify(flipped, x)[0] == 2);
}

TEST_CASE("zero V degenerates to the prior-argmax rule") {
    Matrix V = Matrix::Zero(3, 1);
    Matrix means(2, 3);
    means << 0, 0, 0,
             5, 5, 5;
    Matrix W = Matrix::Identity(3, 3);
    auto model = make_model(V, means, mgsda_test::vec({0.3, 0.7}), W);
    CHECK(model.degenerate);
    Matrix X(2, 3);
    X << 0, 0, 0,
         9, 9, 9;
    auto labels = classify(model, X);
    CHECK(labels[0] == 2);
    CHECK(labels[1] == 2);
    Matrix s = scores(model, X);
    CHECK(s(0, 0) == s(1, 0));
    CHECK(s(0, 1) == doctest::Approx(-2.0 * std::log(0.7)));
}

TEST_CASE("exact ties resolve to the lowest label") {
    Matrix V = Matrix::Zero(2, 1);
    Matrix means(3, 2);
    means.setZero();
    Matrix W = Matrix::Identity(2, 2);
    auto model = make_model(V, means, mgsda_test::vec({1.0 / 3, 1.0 / 3, 1.0 / 3}), W);
    Matrix x(1, 2);
    x << 4.0, -1.0;
    CHECK(classify(model, x)[0] == 1);
}

TEST_CASE("coordinates outside the support never influence scores") {
    Rng rng(derive_seed(42, 0));
    Matrix W = random_pd(rng, 4);
    Matrix V = Matrix::Zero(4, 1);
    V(0, 0) = 1.2;
    V(2, 0) = -0.7;
    Matrix means(2, 4);
    means << 0, 3, 1, -2,
             1, -4, 2, 6;
    auto model = make_model(V, means, mgsda_test::vec({0.5, 0.5}), W);

    Matrix x(1, 4);
    x << 0.3, 100.0, -0.8, -55.0;
    Matrix base = scores(model, x);

    Matrix x2 = x;
    x2(0, 1) = -9.0;
    x2(0, 3) = 7.5;
    CHECK((scores(model, x2) - base).norm() == 0.0);

    // perturbing W in rows/columns off the support is invisible too
    Matrix W2 = W;
    W2(1, 1) += 5.0;
    W2(1, 3) += 0.7;
    W2(3, 1) += 0.7;
    auto model2 = make_model(V, means, mgsda_test::vec({0.5, 0.5}), W2);
    CHECK((scores(model2, x) - base).norm() <= 1e-12 * base.norm());
}

TEST_CASE("labels are invariant to invertible recombination of V") {
    Rng rng(derive_seed(43, 0));
    std::normal_distribution<double> normal;
    int p = 6, m = 2;
    Matrix W = random_pd(rng, p);
    Matrix V(p, m);
    for (int i = 0; i < V.size(); ++i) V(i / m, i % m) = normal(rng);
    Matrix means(3, p);
    for (int i = 0; i < means.size(); ++i)
        means(i / p, i % p) = 2.0 * normal(rng);
    Vector priors = mgsda_test::vec({0.2, 0.35, 0.45});

    Matrix M(m, m);
    M << 1.3, -0.4,
         0.2, 0.9;
    auto model = make_model(V, means, priors, W);
    auto mixed = make_model(V * M, means, priors, W);

    Matrix X(40, p);
    for (int i = 0; i < X.size(); ++i) X(i / p, i % p) = 3.0 * normal(rng);
    CHECK(classify(model, X) == classify(mixed, X));

    Matrix Vdef = V;
    Vdef.col(1) = V.col(0); // rank-deficient projection still classifies
    auto deficient = make_model(Vdef, means, priors, W);
    CHECK(deficient.rank == 1);
    auto scaled = make_model(2.5 * Vdef, means, priors, W);
    CHECK(classify(deficient, X) == classify(scaled, X));
}

TEST_CASE("oracle direction separates an identity-covariance population") {
    PopulationSpec pop;
    pop.priors = mgsda_test::vec({0.5, 0.5});
    pop.means = Matrix::Zero(2, 3);
    pop.means(0, 0) = 1.0;
    pop.means(1, 0) = -1.0;
    pop.sigma_w = Matrix::Identity(3, 3);
    auto model = oracle_model(pop);
    REQUIRE(!model.degenerate);

    Matrix X(2, 3);
    X << 0.4, 9.0, -3.0,
         -0.4, 9.0, -3.0;
    auto labels = classify(model, X);
    CHECK(labels[0] == 1);
    CHECK(labels[1] == 2);
}

TEST_CASE("oracle error on the identity population matches theory") {
    // ten unit mean shifts on independent coordinates: Phi(-sqrt(10)/2)
    int p = 100, s = 10, half = 50000;
    PopulationSpec pop;
    pop.priors = mgsda_test::vec({0.5, 0.5});
    pop.means = Matrix::Zero(2, p);
    for (int j = 0; j < s; ++j) pop.means(1, j) = 1.0;
    pop.sigma_w = Matrix::Identity(p, p);
    auto model = oracle_model(pop);

    Rng rng(derive_seed(44, 0));
    std::normal_distribution<double> normal;
    Matrix X(2 * half, p);
    std::vector<int> truth(2 * half);
    for (int i = 0; i < 2 * half; ++i) {
        int g = i < half ? 0 : 1;
        truth[i] = g + 1;
        for (int j = 0; j < p; ++j)
            X(i, j) = normal(rng) + pop.means(g, j);
    }
    double err = error_rate(classify(model, X), truth);
    CHECK(std::abs(err - 0.0558) <= 0.005); // +-0.5pp of the nominal rate
}

TEST_CASE("models fitted through statistics agree with make_model") {
    Rng rng(derive_seed(45, 0));
    std::normal_distribution<double> normal;
    Matrix X(30, 4);
    std::vector<int> labels(30);
    for (int i = 0; i < 30; ++i) {
        labels[i] = i < 14 ? 1 : 2;
        for (int j = 0; j < 4; ++j)
            X(i, j) = normal(rng) + (labels[i] == 2 && j == 0 ? 1.5 : 0.0);
    }
    auto data = make_dataset(X, labels);
    auto st = group_statistics(data);
    auto sol = solve(make_problem(st), 0.2 * lambda_max(st.D));
    auto via_stats = fit_model(st, sol.V);
    auto via_data = fit_model(data, sol.V);
    auto direct = make_model(sol.V, st.group_means, st.priors, st.W);
    Matrix probe(5, 4);
    for (int i = 0; i < probe.size(); ++i)
        probe(i / 4, i % 4) = 2.0 * normal(rng);
    CHECK(classify(via_stats, probe) == classify(direct, probe));
    CHECK(classify(via_data, probe) == classify(direct, probe));
    CHECK((scores(via_stats, probe) - scores(direct, probe)).norm() == 0.0);
}

TEST_CASE("standardization stored in the model is applied to inputs") {
    Rng rng(derive_seed(46, 0));
    std::normal_distribution<double> normal;
    Matrix X(24, 3);
    std::vector<int> labels(24);
    for (int i = 0; i < 24; ++i) {
        labels[i] = i < 12 ? 1 : 2;
        for (int j = 0; j < 3; ++j)
            X(i, j) = 4.0 * normal(rng) + (labels[i] == 2 ? 2.0 : 0.0) + 10.0 * j;
    }
    auto std_fit = fit_standardization(X, Standardize::Feature);
    Matrix Z = apply_standardization(X, std_fit);
    auto data = make_dataset(Z, labels);
    auto st = group_statistics(data);
    auto sol = solve(make_problem(st), 0.3 * lambda_max(st.D));

    auto plain = make_model(sol.V, st.group_means, st.priors, st.W);
    auto wrapped = make_model(sol.V, st.group_means, st.priors, st.W, std_fit);
    CHECK((scores(wrapped, X) - scores(plain, Z)).norm() == 0.0);
    CHECK(classify(wrapped, X) == classify(plain, Z));
}

TEST_CASE("error_rate counts mismatches") {
    CHECK(error_rate({1, 2, 1, 2}, {1, 2, 2, 1}) == doctest::Approx(0.5));
    CHECK(error_rate({1, 1}, {1, 1}) == 0.0);
    CHECK_THROWS(error_rate({1}, {1, 2}));
}

TEST_CASE("make_model validates priors") {
    Matrix V = Matrix::Identity(2, 1);
    Matrix means = Matrix::Zero(2, 2);
    Matrix W = Matrix::Identity(2, 2);
    CHECK_THROWS(make_model(V, means, mgsda_test::vec({0.5}), W)); // wrong count
    CHECK_THROWS(make_model(V, means, mgsda_test::vec({1.0, 0.0}), W)); // nonpositive prior
}
