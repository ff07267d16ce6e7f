#include "mgsda/dsda.hpp"

#include <cmath>
#include <stdexcept>

#include "mgsda/solver.hpp"
#include "mgsda/statistics.hpp"

namespace mgsda {

Vector lasso_cd(const Matrix& X, const Vector& y, double lambda, double tol,
                int max_iter) {
    const auto N = X.rows();
    const auto p = X.cols();
    if (y.size() != N) throw std::invalid_argument("lasso: y size mismatch");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lasso: lambda < 0");

    Vector a(p); // (1/N) ||x_j||^2
    for (Eigen::Index j = 0; j < p; ++j)
        a[j] = X.col(j).squaredNorm() / double(N);

    Vector beta = Vector::Zero(p);
    Vector res = y; // y - X beta
    for (int it = 0; it < max_iter; ++it) {
        double max_change = 0.0;
        double max_beta = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (a[j] <= 0.0) continue;
            const double z = X.col(j).dot(res) / double(N) + a[j] * beta[j];
            double bnew = 0.0;
            if (z > lambda)
                bnew = (z - lambda) / a[j];
            else if (z < -lambda)
                bnew = (z + lambda) / a[j];
            const double diff = bnew - beta[j];
            if (diff != 0.0) {
                res -= X.col(j) * diff;
                beta[j] = bnew;
            }
            max_change = std::max(max_change, std::abs(diff));
            max_beta = std::max(max_beta, std::abs(bnew));
        }
        if (max_change <= tol * (1.0 + max_beta)) break;
    }
    return beta;
}

DsdaCheck dsda_equivalence_check(const LabeledDataset& data, double lambda,
                                 double tol) {
    if (data.n_groups != 2)
        throw std::invalid_argument("dsda check: needs exactly 2 groups");

    const auto counts = data.group_sizes();
    const double n1 = counts[0], n2 = counts[1];
    const double N = data.n();
    const double c = std::sqrt(n1 * n2) / N;

    const GroupStatistics st = group_statistics(data);

    // Globally centered data; T = Xc^t Xc / N is the total covariance, which
    // also equals (N-G)/N * W + D D^t.
    Matrix Xc = data.X.rowwise() - data.X.colwise().mean();
    PenalizedProblem prob;
    prob.T = (Xc.transpose() * Xc) / N;
    prob.T = ((prob.T + prob.T.transpose()) * 0.5).eval();
    prob.D = st.D;

    SolveOptions opts;
    opts.tol = tol;
    opts.max_sweeps = 100000;
    const Solution sol = solve(prob, lambda, opts);

    Vector y(data.n());
    for (int i = 0; i < data.n(); ++i)
        y[i] = data.labels[i] == 1 ? N / n1 : -N / n2;
    // Codes average to zero, so centering X alone profiles out the intercept.
    const Vector beta = lasso_cd(Xc, y, lambda / c, tol * 1e-2);

    DsdaCheck out;
    out.c = c;
    out.v_group = sol.V.col(0);
    out.v_lasso = c * beta;
    out.max_abs_diff = (out.v_group - out.v_lasso).cwiseAbs().maxCoeff();
    return out;
}

} // namespace mgsda
