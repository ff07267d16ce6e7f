#pragma once

#include <functional>
#include <vector>

#include "mgsda/linalg.hpp"
#include "mgsda/statistics.hpp"

namespace mgsda {

// Quadratic data for the group-penalized objective
//
//   f(V) = 1/2 tr(V^t T V) - tr(D^t V) + (G-1)/2 + lambda * sum_j ||v_j||_2,
//
// where v_j are the rows of V. With T = W + D D^t this equals
// 1/2 tr(V^t W V) + 1/2 ||D^t V - I||_F^2 + lambda * sum_j ||v_j||_2.
struct PenalizedProblem {
    Matrix T; // p x p, symmetric positive semidefinite
    Matrix D; // p x (G-1)
};

PenalizedProblem make_problem(const GroupStatistics& st);

struct SolveOptions {
    double tol = 1e-6;
    int max_sweeps = 1000;
    Matrix warm_start; // optional p x (G-1) initial iterate; empty means zeros
};

struct Solution {
    Matrix V; // p x (G-1)
    double lambda = 0.0;
    bool converged = false; // KKT residual <= tol certified
    int sweeps = 0;
    double objective = 0.0;
    double kkt = 0.0; // max row KKT residual over non-pinned rows
    // f(V^(0)) followed by the objective after each sweep, each computed from
    // a fresh T*V product. Non-increasing for the standard update.
    std::vector<double> objective_trace;
    // Rows with t_jj ~ 0 (constant features); held at zero throughout.
    std::vector<int> pinned_rows;

    std::vector<int> support() const; // indices of rows with nonzero norm
    int support_size() const { return static_cast<int>(support().size()); }
};

// Smallest penalty for which V = 0 is optimal: max_j ||d_j||_2 over rows of D.
double lambda_max(const Matrix& D);

// Log-spaced grid from lmax down to min_frac * lmax (descending, n points).
// Degenerate lmax <= 0 yields the single point {0}.
std::vector<double> default_lambda_grid(double lmax, int n = 20,
                                        double min_frac = 0.05);

double objective_value(const PenalizedProblem& prob, const Matrix& V,
                       double lambda);

// Max over rows of the subgradient optimality residual: for nonzero rows
// ||(T V - D)_j + lambda v_j / ||v_j||||_2, for zero rows
// max(0, ||(D - T V)_j||_2 - lambda). Zero exactly at a minimizer.
double kkt_residual(const PenalizedProblem& prob, const Matrix& V,
                    double lambda);

// Block coordinate descent over rows of V (Gauss-Seidel). Convergence is
// certified by the KKT residual: the change criterion
// max_j ||delta v_j|| <= tol * (1 + max_j ||v_j||) merely triggers the check.
Solution solve(const PenalizedProblem& prob, double lambda,
               const SolveOptions& options = {});

struct SolutionPath {
    std::vector<double> lambdas;
    std::vector<Solution> solutions;
};

// Solves along a descending lambda grid with warm starts.
SolutionPath solve_path(const PenalizedProblem& prob,
                        const std::vector<double>& lambdas,
                        const SolveOptions& options = {});

// Default grid from lambda_max(prob.D).
SolutionPath solve_path(const PenalizedProblem& prob,
                        const SolveOptions& options = {});

namespace detail {

// The per-row update: given the partial residual r_j and diagonal t_jj, write
// the new row. The standard rule is out = (1 - lambda/||r||)_+ r / t_jj.
// Swappable so verification suites can demonstrate that a corrupted update is
// caught by the KKT checks.
using RowUpdate =
    std::function<void(const Eigen::RowVectorXd& r, double tjj, double lambda,
                       Eigen::RowVectorXd& out)>;

void standard_row_update(const Eigen::RowVectorXd& r, double tjj, double lambda,
                         Eigen::RowVectorXd& out);

Solution solve_with_update(const PenalizedProblem& prob, double lambda,
                           const SolveOptions& options, const RowUpdate& update);

} // namespace detail

} // namespace mgsda
