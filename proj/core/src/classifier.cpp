#include "mgsda/classifier.hpp"

#include <cmath>
#include <stdexcept>

namespace mgsda {

DiscriminantModel make_model(const Matrix& V, const Matrix& group_means,
                             const Vector& priors, const Matrix& within,
                             Standardization standardization,
                             std::vector<std::string> label_names) {
    if (group_means.rows() != priors.size())
        throw std::invalid_argument("model: priors/means size mismatch");
    for (Eigen::Index g = 0; g < priors.size(); ++g)
        if (!(priors[g] > 0.0))
            throw std::invalid_argument("model: priors must be positive");

    DiscriminantModel m;
    m.V = V;
    m.group_means = group_means;
    m.priors = priors;
    m.standardization = std::move(standardization);
    m.label_names = std::move(label_names);

    const auto p = m.group_means.cols();
    if (m.V.size() == 0 || m.V.isZero(0.0)) {
        m.degenerate = true;
        m.proj = Matrix(0, p);
        m.proj_means = Matrix(m.priors.size(), 0);
        return m;
    }
    if (m.V.rows() != p)
        throw std::invalid_argument("model: V rows must match feature count");

    Matrix M = m.V.transpose() * within * m.V;
    M = ((M + M.transpose()) * 0.5).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(M);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("model: eigendecomposition failed");

    const Vector& ev = es.eigenvalues(); // ascending
    const double thresh = 1e-10 * std::max(0.0, ev[ev.size() - 1]);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (ev[k] > thresh && ev[k] > 0.0) keep.push_back(k);

    m.rank = static_cast<int>(keep.size());
    if (m.rank == 0) {
        m.degenerate = true;
        m.proj = Matrix(0, p);
        m.proj_means = Matrix(m.priors.size(), 0);
        return m;
    }

    Matrix Q(M.rows(), m.rank);
    Vector inv_sqrt(m.rank);
    for (int k = 0; k < m.rank; ++k) {
        Q.col(k) = es.eigenvectors().col(keep[k]);
        inv_sqrt[k] = 1.0 / std::sqrt(ev[keep[k]]);
    }
    m.proj = inv_sqrt.asDiagonal() * Q.transpose() * m.V.transpose();
    m.proj_means = m.group_means * m.proj.transpose();
    return m;
}

DiscriminantModel fit_model(const GroupStatistics& st, const Matrix& V,
                            Standardization standardization) {
    return make_model(V, st.group_means, st.priors, st.W,
                      std::move(standardization));
}

DiscriminantModel fit_model(const LabeledDataset& data, const Matrix& V,
                            Standardization standardization) {
    return fit_model(group_statistics(data), V, std::move(standardization));
}

DiscriminantModel oracle_model(const PopulationSpec& spec) {
    validate(spec);
    const Matrix delta = population_contrasts(spec);
    const Matrix V = spec.sigma_w.ldlt().solve(delta);
    return make_model(V, spec.means, spec.priors, spec.sigma_w);
}

Matrix scores(const DiscriminantModel& model, const Matrix& X) {
    if (X.cols() != model.p())
        throw std::invalid_argument("scores: feature count mismatch");
    const Matrix Xs = apply_standardization(X, model.standardization);
    const auto n = Xs.rows();
    const int G = model.n_groups();

    Matrix out(n, G);
    if (model.degenerate) {
        for (int g = 0; g < G; ++g)
            out.col(g).setConstant(-2.0 * std::log(model.priors[g]));
        return out;
    }
    const Matrix Z = Xs * model.proj.transpose(); // n x rank
    for (int g = 0; g < G; ++g) {
        out.col(g) =
            (Z.rowwise() - model.proj_means.row(g)).rowwise().squaredNorm();
        out.col(g).array() -= 2.0 * std::log(model.priors[g]);
    }
    return out;
}

std::vector<int> classify(const DiscriminantModel& model, const Matrix& X) {
    const Matrix S = scores(model, X);
    std::vector<int> labels(S.rows());
    for (Eigen::Index i = 0; i < S.rows(); ++i) {
        int best = 0;
        for (int g = 1; g < S.cols(); ++g)
            if (S(i, g) < S(i, best)) best = g;
        labels[i] = best + 1;
    }
    return labels;
}

double error_rate(const std::vector<int>& predicted,
                  const std::vector<int>& truth) {
    if (predicted.size() != truth.size() || truth.empty())
        throw std::invalid_argument("error_rate: size mismatch");
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (predicted[i] != truth[i]) ++wrong;
    return double(wrong) / double(truth.size());
}

} // namespace mgsda
