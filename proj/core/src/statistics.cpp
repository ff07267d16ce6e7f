#include "mgsda/statistics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mgsda {

Matrix contrast_matrix(const Vector& weights, const Matrix& means) {
    const auto G = weights.size();
    if (means.rows() != G)
        throw std::invalid_argument("contrast_matrix: weights/means size mismatch");
    if (G < 2)
        throw std::invalid_argument("contrast_matrix: need at least 2 groups");
    for (Eigen::Index g = 0; g < G; ++g)
        if (!(weights[g] > 0.0))
            throw std::invalid_argument("contrast_matrix: weights must be positive");

    const auto p = means.cols();
    Matrix out(p, G - 1);
    Vector acc = Vector::Zero(p); // running sum_{i<=r} w_i m_i
    double s = 0.0;               // running sum_{i<=r} w_i
    for (Eigen::Index r = 0; r < G - 1; ++r) {
        acc += weights[r] * means.row(r).transpose();
        s += weights[r];
        const double s_next = s + weights[r + 1];
        // sum_{i<=r} w_i (m_i - m_{r+1}) = acc - s * m_{r+1}
        out.col(r) = std::sqrt(weights[r + 1] / (s * s_next)) *
                     (acc - s * means.row(r + 1).transpose());
    }
    return out;
}

GroupStatistics group_statistics(const LabeledDataset& data) {
    GroupStatistics st;
    st.n_groups = data.n_groups;
    st.n_total = data.n();
    st.counts = data.group_sizes();

    const int G = st.n_groups;
    const int N = st.n_total;
    const int p = data.p();

    st.priors = Vector(G);
    for (int g = 0; g < G; ++g) st.priors[g] = double(st.counts[g]) / double(N);

    st.group_means = Matrix::Zero(G, p);
    for (int i = 0; i < N; ++i)
        st.group_means.row(data.labels[i] - 1) += data.X.row(i);
    for (int g = 0; g < G; ++g) st.group_means.row(g) /= double(st.counts[g]);

    st.overall_mean = Vector::Zero(p);
    for (int g = 0; g < G; ++g)
        st.overall_mean += st.priors[g] * st.group_means.row(g).transpose();

    // Pooled within-group covariance with divisor N - G: accumulate centered
    // outer products group by group via rank updates on the lower triangle.
    Matrix W = Matrix::Zero(p, p);
    for (int i = 0; i < N; ++i) {
        Vector c = data.X.row(i).transpose() -
                   st.group_means.row(data.labels[i] - 1).transpose();
        W.selfadjointView<Eigen::Lower>().rankUpdate(c);
    }
    st.W = Matrix(W.selfadjointView<Eigen::Lower>()) / double(N - G);

    st.D = contrast_matrix(st.priors, st.group_means);

    st.T = st.W + st.D * st.D.transpose();
    st.T = ((st.T + st.T.transpose()) * 0.5).eval();

    return st;
}

Matrix between_scatter(const LabeledDataset& data) {
    const auto st_counts = data.group_sizes();
    const int G = data.n_groups;
    const int N = data.n();
    const int p = data.p();

    Matrix means = Matrix::Zero(G, p);
    for (int i = 0; i < N; ++i) means.row(data.labels[i] - 1) += data.X.row(i);
    for (int g = 0; g < G; ++g) means.row(g) /= double(st_counts[g]);

    Vector overall = Vector::Zero(p);
    for (int g = 0; g < G; ++g)
        overall += (double(st_counts[g]) / N) * means.row(g).transpose();

    Matrix B = Matrix::Zero(p, p);
    for (int g = 0; g < G; ++g) {
        Vector d = means.row(g).transpose() - overall;
        B.selfadjointView<Eigen::Lower>().rankUpdate(d, double(st_counts[g]) / N);
    }
    return Matrix(B.selfadjointView<Eigen::Lower>());
}

void validate(const PopulationSpec& spec) {
    const auto G = spec.priors.size();
    if (G < 2) throw std::invalid_argument("population: need at least 2 groups");
    if (spec.means.rows() != G)
        throw std::invalid_argument("population: priors/means size mismatch");
    const auto p = spec.means.cols();
    if (spec.sigma_w.rows() != p || spec.sigma_w.cols() != p)
        throw std::invalid_argument("population: sigma_w must be p x p");
    double sum = 0.0;
    for (Eigen::Index g = 0; g < G; ++g) {
        if (!(spec.priors[g] > 0.0))
            throw std::invalid_argument("population: priors must be positive");
        sum += spec.priors[g];
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("population: priors must sum to 1, got " +
                                    std::to_string(sum));
    if (!spec.sigma_w.isApprox(spec.sigma_w.transpose(), 1e-12))
        throw std::invalid_argument("population: sigma_w must be symmetric");
}

Matrix population_contrasts(const PopulationSpec& spec) {
    validate(spec);
    return contrast_matrix(spec.priors, spec.means);
}

Matrix population_between_scatter(const PopulationSpec& spec) {
    validate(spec);
    const auto G = spec.priors.size();
    const auto p = spec.means.cols();
    Vector overall = Vector::Zero(p);
    for (Eigen::Index g = 0; g < G; ++g)
        overall += spec.priors[g] * spec.means.row(g).transpose();
    Matrix B = Matrix::Zero(p, p);
    for (Eigen::Index g = 0; g < G; ++g) {
        Vector d = spec.means.row(g).transpose() - overall;
        B.selfadjointView<Eigen::Lower>().rankUpdate(d, spec.priors[g]);
    }
    return Matrix(B.selfadjointView<Eigen::Lower>());
}

} // namespace mgsda
