#include "mgsda/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mgsda {

PenalizedProblem make_problem(const GroupStatistics& st) {
    return PenalizedProblem{st.T, st.D};
}

std::vector<int> Solution::support() const {
    std::vector<int> idx;
    for (Eigen::Index j = 0; j < V.rows(); ++j)
        if (V.row(j).norm() > 0.0) idx.push_back(static_cast<int>(j));
    return idx;
}

double lambda_max(const Matrix& D) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < D.rows(); ++j)
        m = std::max(m, D.row(j).norm());
    return m;
}

std::vector<double> default_lambda_grid(double lmax, int n, double min_frac) {
    if (n < 1) throw std::invalid_argument("lambda grid: need n >= 1");
    if (!(min_frac > 0.0 && min_frac <= 1.0))
        throw std::invalid_argument("lambda grid: min_frac must be in (0, 1]");
    if (lmax <= 0.0) return {0.0};
    if (n == 1) return {lmax};
    std::vector<double> grid(n);
    const double log_hi = std::log(lmax);
    const double log_lo = std::log(min_frac * lmax);
    for (int i = 0; i < n; ++i)
        grid[i] = std::exp(log_hi + (log_lo - log_hi) * double(i) / double(n - 1));
    grid.front() = lmax; // exact endpoints
    grid.back() = min_frac * lmax;
    return grid;
}

namespace {

void check_problem(const PenalizedProblem& prob, double lambda) {
    const auto p = prob.T.rows();
    if (prob.T.cols() != p)
        throw std::invalid_argument("solver: T must be square");
    if (prob.D.rows() != p)
        throw std::invalid_argument("solver: D row count must match T");
    if (prob.D.cols() < 1)
        throw std::invalid_argument("solver: D needs at least one column");
    if (!(lambda >= 0.0))
        throw std::invalid_argument("solver: lambda must be non-negative");
    const double scale = std::max(1.0, prob.T.cwiseAbs().maxCoeff());
    if ((prob.T - prob.T.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("solver: T must be symmetric");
    if (!prob.T.allFinite() || !prob.D.allFinite())
        throw std::invalid_argument("solver: non-finite problem data");
}

std::vector<int> find_pinned(const PenalizedProblem& prob) {
    const double thresh =
        1e-12 * std::max(1.0, prob.T.diagonal().maxCoeff());
    std::vector<int> pinned;
    for (Eigen::Index j = 0; j < prob.T.rows(); ++j)
        if (prob.T(j, j) <= thresh) pinned.push_back(static_cast<int>(j));
    return pinned;
}

double kkt_residual_impl(const PenalizedProblem& prob, const Matrix& V,
                         double lambda, const std::vector<char>* skip) {
    Matrix G = prob.T * V - prob.D; // rows are smooth-part gradients
    double worst = 0.0;
    for (Eigen::Index j = 0; j < V.rows(); ++j) {
        if (skip && (*skip)[j]) continue;
        const double vnorm = V.row(j).norm();
        double r;
        if (vnorm > 0.0)
            r = (G.row(j) + (lambda / vnorm) * V.row(j)).norm();
        else
            r = std::max(0.0, G.row(j).norm() - lambda);
        worst = std::max(worst, r);
    }
    return worst;
}

double objective_impl(const PenalizedProblem& prob, const Matrix& V,
                      const Matrix& TV, double lambda) {
    double quad = 0.5 * V.cwiseProduct(TV).sum();
    double lin = prob.D.cwiseProduct(V).sum();
    double pen = 0.0;
    for (Eigen::Index j = 0; j < V.rows(); ++j) pen += V.row(j).norm();
    return quad - lin + 0.5 * double(prob.D.cols()) + lambda * pen;
}

} // namespace

double objective_value(const PenalizedProblem& prob, const Matrix& V,
                       double lambda) {
    if (V.rows() != prob.T.rows() || V.cols() != prob.D.cols())
        throw std::invalid_argument("objective: V has wrong shape");
    return objective_impl(prob, V, prob.T * V, lambda);
}

double kkt_residual(const PenalizedProblem& prob, const Matrix& V,
                    double lambda) {
    if (V.rows() != prob.T.rows() || V.cols() != prob.D.cols())
        throw std::invalid_argument("kkt: V has wrong shape");
    return kkt_residual_impl(prob, V, lambda, nullptr);
}

namespace detail {

void standard_row_update(const Eigen::RowVectorXd& r, double tjj, double lambda,
                         Eigen::RowVectorXd& out) {
    const double rnorm = r.norm();
    if (rnorm > lambda)
        out = ((rnorm - lambda) / (rnorm * tjj)) * r;
    else
        out.setZero();
}

Solution solve_with_update(const PenalizedProblem& prob, double lambda,
                           const SolveOptions& options,
                           const RowUpdate& update) {
    check_problem(prob, lambda);
    if (options.tol <= 0.0)
        throw std::invalid_argument("solver: tol must be positive");
    if (options.max_sweeps < 1)
        throw std::invalid_argument("solver: max_sweeps must be >= 1");

    const auto p = prob.T.rows();
    const auto m = prob.D.cols(); // G - 1

    Solution sol;
    sol.lambda = lambda;
    sol.pinned_rows = find_pinned(prob);

    std::vector<char> pinned(p, 0);
    for (int j : sol.pinned_rows) pinned[j] = 1;

    if (options.warm_start.size() > 0) {
        if (options.warm_start.rows() != p || options.warm_start.cols() != m)
            throw std::invalid_argument("solver: warm start has wrong shape");
        sol.V = options.warm_start;
        for (int j : sol.pinned_rows) sol.V.row(j).setZero();
    } else {
        sol.V = Matrix::Zero(p, m);
    }

    Matrix& V = sol.V;
    sol.objective_trace.push_back(objective_impl(prob, V, prob.T * V, lambda));

    Eigen::RowVectorXd r(m), vnew(m), delta(m);
    Matrix U(p, m); // running T * V, refreshed each sweep

    for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
        sol.sweeps = sweep;
        U.noalias() = prob.T * V;

        double max_change = 0.0;
        double max_norm = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (pinned[j]) continue;
            const double tjj = prob.T(j, j);
            r = prob.D.row(j) - (U.row(j) - tjj * V.row(j));
            update(r, tjj, lambda, vnew);
            delta = vnew - V.row(j);
            const double change = delta.norm();
            if (change > 0.0) {
                U.noalias() += prob.T.col(j) * delta;
                V.row(j) = vnew;
            }
            max_change = std::max(max_change, change);
            max_norm = std::max(max_norm, vnew.norm());
        }

        sol.objective_trace.push_back(
            objective_impl(prob, V, prob.T * V, lambda));

        if (max_change <= options.tol * (1.0 + max_norm)) {
            sol.kkt = kkt_residual_impl(prob, V, lambda, &pinned);
            if (sol.kkt <= options.tol) {
                sol.converged = true;
                break;
            }
            if (max_change == 0.0) break; // exact fixed point, no progress left
        }
    }

    if (!sol.converged)
        sol.kkt = kkt_residual_impl(prob, V, lambda, &pinned);
    sol.objective = sol.objective_trace.back();
    return sol;
}

} // namespace detail

Solution solve(const PenalizedProblem& prob, double lambda,
               const SolveOptions& options) {
    return detail::solve_with_update(prob, lambda, options,
                                     detail::standard_row_update);
}

SolutionPath solve_path(const PenalizedProblem& prob,
                        const std::vector<double>& lambdas,
                        const SolveOptions& options) {
    if (lambdas.empty())
        throw std::invalid_argument("solve_path: empty lambda grid");
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (lambdas[i] > lambdas[i - 1])
            throw std::invalid_argument("solve_path: grid must be descending");

    SolutionPath path;
    path.lambdas = lambdas;
    path.solutions.reserve(lambdas.size());
    SolveOptions opts = options;
    for (double lambda : lambdas) {
        Solution s = solve(prob, lambda, opts);
        opts.warm_start = s.V;
        path.solutions.push_back(std::move(s));
    }
    return path;
}

SolutionPath solve_path(const PenalizedProblem& prob,
                        const SolveOptions& options) {
    return solve_path(prob, default_lambda_grid(lambda_max(prob.D)), options);
}

} // namespace mgsda
