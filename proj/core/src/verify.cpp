#include "mgsda/verify.hpp"

#include <algorithm>
#include <cmath>

#include "mgsda/classifier.hpp"
#include "mgsda/dsda.hpp"
#include "mgsda/rng.hpp"
#include "mgsda/solver.hpp"
#include "mgsda/statistics.hpp"

namespace mgsda {

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

namespace {

struct Worst {
    double value = 0.0;
    void absorb(double v) { value = std::max(value, v); }
};

CheckResult make_check(std::string name, double worst, double threshold) {
    return CheckResult{std::move(name), worst <= threshold, worst, threshold};
}

Matrix random_gaussian(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix M(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M(i, j) = gauss(rng);
    return M;
}

Matrix random_pd(int p, Rng& rng) {
    Matrix A = random_gaussian(p, p, rng);
    Matrix S = (A * A.transpose()) / double(p) +
               0.5 * Matrix::Identity(p, p);
    return ((S + S.transpose()) * 0.5).eval();
}

Matrix random_orthogonal(int m, Rng& rng) {
    Eigen::HouseholderQR<Matrix> qr(random_gaussian(m, m, rng));
    Matrix Q = qr.householderQ();
    Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m; ++j)
        if (R(j, j) < 0) Q.col(j) = -Q.col(j);
    return Q;
}

Matrix random_invertible(int m, Rng& rng) {
    // Clip singular values away from zero so conditioning stays tame.
    Eigen::JacobiSVD<Matrix> svd(random_gaussian(m, m, rng),
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vector s = svd.singularValues();
    for (int i = 0; i < m; ++i) s[i] = std::clamp(s[i], 0.4, 3.0);
    return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

LabeledDataset random_dataset(Rng& rng, int G, int p, int n_lo, int n_hi) {
    std::uniform_int_distribution<int> size_dist(n_lo, n_hi);
    std::vector<int> counts(G);
    int N = 0;
    for (int g = 0; g < G; ++g) N += counts[g] = size_dist(rng);

    const Matrix means = 1.5 * random_gaussian(G, p, rng);
    const Matrix sigma = random_pd(p, rng);
    const Matrix L = Eigen::LLT<Matrix>(sigma).matrixL();

    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix X(N, p);
    std::vector<int> labels(N);
    Vector z(p);
    int row = 0;
    for (int g = 0; g < G; ++g)
        for (int i = 0; i < counts[g]; ++i, ++row) {
            for (int j = 0; j < p; ++j) z[j] = gauss(rng);
            X.row(row) = means.row(g) + (L * z).transpose();
            labels[row] = g + 1;
        }
    return make_dataset(std::move(X), std::move(labels), G);
}

bool trace_monotone(const std::vector<double>& trace) {
    for (std::size_t k = 1; k < trace.size(); ++k)
        if (trace[k] > trace[k - 1] + 1e-12 * std::max(1.0, std::abs(trace[k - 1])))
            return false;
    return true;
}

} // namespace

SuiteReport decomposition_suite(std::uint64_t seed, int n_datasets) {
    SuiteReport report{"decomposition", {}};
    Rng rng(derive_seed(seed, 0xDECD));
    std::uniform_int_distribution<int> g_dist(2, 4), p_dist(3, 30);

    Worst decomp, symmetry, psd, f0;
    for (int i = 0; i < n_datasets; ++i) {
        const int G = g_dist(rng);
        const LabeledDataset data = random_dataset(rng, G, p_dist(rng), 3, 15);
        const GroupStatistics st = group_statistics(data);

        const Matrix B = between_scatter(data);
        decomp.absorb((B - st.D * st.D.transpose()).norm() / (1.0 + B.norm()));
        symmetry.absorb((st.T - st.T.transpose()).cwiseAbs().maxCoeff());

        Eigen::SelfAdjointEigenSolver<Matrix> es(st.W);
        psd.absorb(std::max(0.0, -es.eigenvalues().minCoeff() /
                                     std::max(1.0, es.eigenvalues().maxCoeff())));

        const Matrix zero = Matrix::Zero(data.p(), G - 1);
        f0.absorb(std::abs(objective_value(make_problem(st), zero, 1.0) -
                           0.5 * (G - 1)));
    }
    report.checks.push_back(make_check("B equals D D^t (rel Frobenius)",
                                       decomp.value, 1e-10));
    report.checks.push_back(make_check("T symmetric", symmetry.value, 0.0));
    report.checks.push_back(make_check("W positive semidefinite", psd.value, 1e-10));
    report.checks.push_back(make_check("f(0) = (G-1)/2", f0.value, 0.0));
    return report;
}

SuiteReport kkt_suite(std::uint64_t seed, int n_problems, bool corrupt_update) {
    SuiteReport report{"kkt", {}};
    Rng rng(derive_seed(seed, 0x1213));
    std::uniform_int_distribution<int> g_dist(2, 4), p_dist(5, 50);

    const detail::RowUpdate update =
        corrupt_update
            ? detail::RowUpdate([](const Eigen::RowVectorXd& r, double tjj,
                                   double lambda, Eigen::RowVectorXd& out) {
                  detail::standard_row_update(r, tjj, -lambda, out);
              })
            : detail::RowUpdate(detail::standard_row_update);

    SolveOptions opts;
    opts.tol = 1e-6;

    Worst kkt, zero_at_max;
    int not_converged = 0;
    bool monotone = true;
    for (int i = 0; i < n_problems; ++i) {
        const LabeledDataset data =
            random_dataset(rng, g_dist(rng), p_dist(rng), 3, 20);
        const PenalizedProblem prob = make_problem(group_statistics(data));
        const double lmax = lambda_max(prob.D);

        for (double frac : {0.6, 0.15}) {
            const Solution sol =
                detail::solve_with_update(prob, frac * lmax, opts, update);
            if (!sol.converged)
                ++not_converged;
            else
                kkt.absorb(kkt_residual(prob, sol.V, sol.lambda));
            monotone = monotone && trace_monotone(sol.objective_trace);
        }

        for (double frac : {1.0, 1.1}) {
            const Solution sol =
                detail::solve_with_update(prob, frac * lmax, opts, update);
            zero_at_max.absorb(double(sol.support_size()));
        }
    }

    // Dense agreement at lambda = 0 (overdetermined instances keep T positive
    // definite so the minimizer is unique).
    Worst dense;
    SolveOptions tight;
    tight.tol = 1e-12;
    tight.max_sweeps = 20000;
    for (int i = 0; i < 10; ++i) {
        const int p = std::uniform_int_distribution<int>(3, 10)(rng);
        const LabeledDataset data = random_dataset(rng, 2, p, p + 5, p + 15);
        const PenalizedProblem prob = make_problem(group_statistics(data));
        const Solution sol = detail::solve_with_update(prob, 0.0, tight, update);
        const Matrix direct = prob.T.ldlt().solve(prob.D);
        dense.absorb((sol.V - direct).norm() / direct.norm());
        monotone = monotone && trace_monotone(sol.objective_trace);
    }

    report.checks.push_back(
        make_check("all solves converged", double(not_converged), 0.0));
    report.checks.push_back(
        make_check("KKT residual at convergence", kkt.value, 1e-6));
    report.checks.push_back(make_check("objective trace monotone",
                                       monotone ? 0.0 : 1.0, 0.0));
    report.checks.push_back(make_check("V = 0 at lambda >= lambda_max",
                                       zero_at_max.value, 0.0));
    report.checks.push_back(
        make_check("lambda = 0 matches dense T^{-1} D (rel)", dense.value, 1e-8));
    return report;
}

SuiteReport invariance_suite(std::uint64_t seed, int n_models, int n_points) {
    SuiteReport report{"invariance", {}};
    Rng rng(derive_seed(seed, 0x14BA));
    std::uniform_int_distribution<int> g_dist(2, 4), p_dist(4, 12);

    // Right-invariance of the rule: V, V R, V M give identical labels.
    int label_mismatches = 0;
    for (int i = 0; i < n_models; ++i) {
        const int G = g_dist(rng);
        const int p = p_dist(rng);
        const int m = G - 1;

        const Matrix W = random_pd(p, rng);
        const Matrix means = 2.0 * random_gaussian(G, p, rng);
        Vector priors = Vector::Zero(G);
        std::uniform_real_distribution<double> unif(0.2, 1.0);
        for (int g = 0; g < G; ++g) priors[g] = unif(rng);
        priors /= priors.sum();

        Matrix V = random_gaussian(p, m, rng);
        if (m > 1 && i % 3 == 0) V.col(m - 1) = V.col(0); // rank-deficient case

        const Matrix X = 3.0 * random_gaussian(n_points, p, rng);
        const auto base = classify(make_model(V, means, priors, W), X);
        const auto rot = classify(
            make_model(V * random_orthogonal(m, rng), means, priors, W), X);
        const auto inv = classify(
            make_model(V * random_invertible(m, rng), means, priors, W), X);
        for (int k = 0; k < n_points; ++k)
            if (base[k] != rot[k] || base[k] != inv[k]) ++label_mismatches;
    }
    report.checks.push_back(make_check("labels invariant under V R / V M",
                                       double(label_mismatches), 0.0));

    // Solver equivariance under feature permutation and data rescaling, on
    // overdetermined instances where the minimizer is unique.
    Worst perm_gap, perm_obj, scale_gap, scale_obj;
    int pred_mismatch = 0;
    SolveOptions tight;
    tight.tol = 1e-11;
    tight.max_sweeps = 20000;
    for (int i = 0; i < 10; ++i) {
        const int G = g_dist(rng);
        const int p = std::uniform_int_distribution<int>(4, 12)(rng);
        const LabeledDataset data = random_dataset(rng, G, p, p + 6, p + 12);
        const PenalizedProblem prob = make_problem(group_statistics(data));
        const double lambda = 0.3 * lambda_max(prob.D);
        const Solution sol = solve(prob, lambda, tight);

        std::vector<int> perm(p);
        for (int j = 0; j < p; ++j) perm[j] = j;
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix Xp(data.n(), p);
        for (int j = 0; j < p; ++j) Xp.col(j) = data.X.col(perm[j]);
        const LabeledDataset pdata = make_dataset(Xp, data.labels, data.n_groups);
        const PenalizedProblem pprob = make_problem(group_statistics(pdata));
        const Solution psol = solve(pprob, lambda, tight);

        Matrix unperm(p, G - 1);
        for (int j = 0; j < p; ++j) unperm.row(perm[j]) = psol.V.row(j);
        perm_gap.absorb((unperm - sol.V).cwiseAbs().maxCoeff());
        perm_obj.absorb(std::abs(objective_value(prob, unperm, lambda) -
                                 sol.objective) /
                        (1.0 + std::abs(sol.objective)));

        // Classifier commutes with the permutation as well.
        const Matrix Xnew = 2.0 * random_gaussian(50, p, rng);
        Matrix Xnew_p(50, p);
        for (int j = 0; j < p; ++j) Xnew_p.col(j) = Xnew.col(perm[j]);
        const auto l1 = classify(fit_model(data, sol.V), Xnew);
        const auto l2 = classify(fit_model(pdata, psol.V), Xnew_p);
        for (std::size_t k = 0; k < l1.size(); ++k)
            if (l1[k] != l2[k]) ++pred_mismatch;

        for (double c : {0.5, 2.0}) {
            const LabeledDataset sdata =
                make_dataset(c * data.X, data.labels, data.n_groups);
            const PenalizedProblem sprob = make_problem(group_statistics(sdata));
            const Solution ssol = solve(sprob, c * lambda, tight);
            scale_gap.absorb((c * ssol.V - sol.V).cwiseAbs().maxCoeff());
            scale_obj.absorb(std::abs(objective_value(prob, c * ssol.V, lambda) -
                                      sol.objective) /
                             (1.0 + std::abs(sol.objective)));
        }
    }
    report.checks.push_back(
        make_check("permutation equivariance (max abs)", perm_gap.value, 1e-7));
    report.checks.push_back(
        make_check("permutation objective match (rel)", perm_obj.value, 1e-9));
    report.checks.push_back(make_check("predictions commute with permutation",
                                       double(pred_mismatch), 0.0));
    report.checks.push_back(make_check("scaling covariance V(cX, c lambda) = V/c",
                                       scale_gap.value, 1e-7));
    report.checks.push_back(
        make_check("scaling objective match (rel)", scale_obj.value, 1e-9));
    return report;
}

SuiteReport eigen_equivalence_suite(std::uint64_t seed, int n_instances) {
    SuiteReport report{"eigen-equivalence", {}};
    Rng rng(derive_seed(seed, 0xE16E));
    std::uniform_int_distribution<int> g_dist(2, 4), p_dist(5, 20);

    Worst angle, eig_map;
    for (int i = 0; i < n_instances; ++i) {
        const int G = g_dist(rng);
        const int p = p_dist(rng);
        PopulationSpec spec;
        spec.sigma_w = random_pd(p, rng);
        spec.means = 2.0 * random_gaussian(G, p, rng);
        std::uniform_real_distribution<double> unif(0.2, 1.0);
        spec.priors = Vector::Zero(G);
        for (int g = 0; g < G; ++g) spec.priors[g] = unif(rng);
        spec.priors /= spec.priors.sum();

        const Matrix sigma_b = population_between_scatter(spec);
        const int r = G - 1; // generic rank of sigma_b

        Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> pen1(sigma_b, spec.sigma_w);
        Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> pen2(
            sigma_b, spec.sigma_w + sigma_b);

        // Leading r eigenvectors (eigenvalues come out ascending).
        Matrix U1 = pen1.eigenvectors().rightCols(r);
        Matrix U2 = pen2.eigenvectors().rightCols(r);
        const Matrix Q1 = Eigen::HouseholderQR<Matrix>(U1).householderQ() *
                          Matrix::Identity(p, r);
        const Matrix Q2 = Eigen::HouseholderQR<Matrix>(U2).householderQ() *
                          Matrix::Identity(p, r);
        const Matrix gap = Q2 - Q1 * (Q1.transpose() * Q2);
        angle.absorb(Eigen::JacobiSVD<Matrix>(gap).singularValues().maxCoeff());

        for (int k = 0; k < r; ++k) {
            const double rho = pen1.eigenvalues()[p - 1 - k];
            const double gamma = pen2.eigenvalues()[p - 1 - k];
            eig_map.absorb(std::abs(rho - gamma / (1.0 - gamma)) / (1.0 + rho));
        }
    }
    report.checks.push_back(
        make_check("principal angles (sin, max)", angle.value, 1e-8));
    report.checks.push_back(
        make_check("eigenvalue map rho = gamma/(1-gamma)", eig_map.value, 1e-8));
    return report;
}

SuiteReport dsda_suite(std::uint64_t seed, int n_instances) {
    SuiteReport report{"dsda-equivalence", {}};
    Rng rng(derive_seed(seed, 0xD5DA));
    std::uniform_int_distribution<int> p_dist(5, 25);

    Worst gap;
    for (int i = 0; i < n_instances; ++i) {
        const LabeledDataset data =
            random_dataset(rng, 2, p_dist(rng), 20, 40);
        const GroupStatistics st = group_statistics(data);
        const double lmax = lambda_max(st.D);
        for (double frac : {0.7, 0.3, 0.1}) {
            const DsdaCheck check =
                dsda_equivalence_check(data, frac * lmax);
            gap.absorb(check.max_abs_diff);
        }
    }
    report.checks.push_back(make_check(
        "two-group solution matches rescaled lasso (max abs)", gap.value, 1e-6));
    return report;
}

std::vector<SuiteReport> run_all_suites(std::uint64_t seed) {
    return {decomposition_suite(derive_seed(seed, 1)),
            kkt_suite(derive_seed(seed, 2)),
            invariance_suite(derive_seed(seed, 3)),
            eigen_equivalence_suite(derive_seed(seed, 4)),
            dsda_suite(derive_seed(seed, 5))};
}

} // namespace mgsda
