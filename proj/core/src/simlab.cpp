#include "mgsda/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mgsda/classifier.hpp"

namespace mgsda {

namespace {

constexpr double kEquiRho = 0.5;
constexpr double kArRho = 0.8;
constexpr double kBernValue = 0.5;
constexpr double kBernProb = 0.2;

// Sub-seed streams off scenario.seed.
constexpr std::uint64_t kCovStream = 0;
constexpr std::uint64_t kSingleDrawStream = 1;
constexpr std::uint64_t kRepStreamBase = 100;

} // namespace

const char* to_string(CovStructure s) {
    switch (s) {
    case CovStructure::Identity: return "identity";
    case CovStructure::Equicorrelation: return "equicorrelation";
    case CovStructure::Autoregressive: return "autoregressive";
    case CovStructure::Bernoulli: return "bernoulli";
    case CovStructure::FromFile: return "fromfile";
    }
    return "?";
}

CovStructure cov_structure_from_string(const std::string& name) {
    if (name == "identity") return CovStructure::Identity;
    if (name == "equicorrelation") return CovStructure::Equicorrelation;
    if (name == "autoregressive") return CovStructure::Autoregressive;
    if (name == "bernoulli") return CovStructure::Bernoulli;
    if (name == "fromfile") return CovStructure::FromFile;
    throw std::invalid_argument("unknown covariance structure: " + name);
}

void validate(const SimScenario& sc) {
    if (sc.p < 1) throw std::invalid_argument("scenario: p must be positive");
    if (sc.s < 0 || sc.s > sc.p)
        throw std::invalid_argument("scenario: need 0 <= s <= p");
    if (sc.G != 2 && sc.G != 3)
        throw std::invalid_argument("scenario: built-in means need G in {2,3}");
    if (sc.G == 3 && sc.s % 2 != 0)
        throw std::invalid_argument("scenario: s must be even when G = 3");
    if (sc.n < 2) throw std::invalid_argument("scenario: need n >= 2 per group");
    if (sc.structure == CovStructure::FromFile) {
        if (sc.sigma_file.rows() != sc.p || sc.sigma_file.cols() != sc.p)
            throw std::invalid_argument("scenario: covariance file must be p x p");
        if (sc.blend_alpha < 0.0 || sc.blend_alpha > 1.0)
            throw std::invalid_argument("scenario: blend_alpha must be in [0,1]");
    }
}

Matrix build_covariance(const SimScenario& sc) {
    validate(sc);
    const int p = sc.p;
    switch (sc.structure) {
    case CovStructure::Identity:
        return Matrix::Identity(p, p);
    case CovStructure::Equicorrelation: {
        Matrix S = Matrix::Constant(p, p, kEquiRho);
        S.diagonal().setOnes();
        return S;
    }
    case CovStructure::Autoregressive: {
        Matrix S(p, p);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) S(i, j) = std::pow(kArRho, std::abs(i - j));
        return S;
    }
    case CovStructure::Bernoulli: {
        Rng rng(derive_seed(sc.seed, kCovStream));
        std::bernoulli_distribution coin(kBernProb);
        Matrix B = Matrix::Identity(p, p);
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (coin(rng)) B(i, j) = B(j, i) = kBernValue;
        Eigen::SelfAdjointEigenSolver<Matrix> es(B);
        const double delta = std::max(-es.eigenvalues().minCoeff(), 0.0) + 0.05;
        Matrix omega = (B + delta * Matrix::Identity(p, p)) / (1.0 + delta);
        Matrix S = omega.llt().solve(Matrix::Identity(p, p));
        return ((S + S.transpose()) * 0.5).eval();
    }
    case CovStructure::FromFile: {
        Matrix S = sc.sigma_file;
        const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
        if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
            throw std::invalid_argument("covariance file: matrix not symmetric");
        if (sc.blend_alpha > 0.0)
            S = (1.0 - sc.blend_alpha) * S +
                sc.blend_alpha * Matrix::Identity(p, p);
        if (Eigen::LLT<Matrix>(S).info() != Eigen::Success)
            throw std::invalid_argument("covariance file: matrix not positive definite");
        return S;
    }
    }
    throw std::logic_error("unknown covariance structure");
}

Matrix build_means(const SimScenario& sc) {
    validate(sc);
    Matrix M = Matrix::Zero(sc.G, sc.p);
    if (sc.G == 2) {
        for (int j = 0; j < sc.s; ++j) M(1, j) = sc.mean_scale;
    } else {
        const int half = sc.s / 2;
        for (int j = 0; j < half; ++j) {
            M(1, j) = sc.mean_scale;
            M(2, j) = -sc.mean_scale;
        }
        for (int j = half; j < sc.s; ++j) {
            M(1, j) = -sc.mean_scale;
            M(2, j) = sc.mean_scale;
        }
    }
    return M;
}

PopulationSpec population_spec(const SimScenario& sc) {
    PopulationSpec spec;
    spec.priors = Vector::Constant(sc.G, 1.0 / sc.G);
    spec.means = build_means(sc);
    spec.sigma_w = build_covariance(sc);
    return spec;
}

LabeledDataset sample_dataset(const PopulationSpec& spec, int n_per_group,
                              Rng& rng) {
    validate(spec);
    if (n_per_group < 1)
        throw std::invalid_argument("sample: need n_per_group >= 1");
    const int G = static_cast<int>(spec.priors.size());
    const int p = static_cast<int>(spec.means.cols());

    Eigen::LLT<Matrix> llt(spec.sigma_w);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("sample: covariance is not positive definite");
    const Matrix L = llt.matrixL();

    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix X(G * n_per_group, p);
    std::vector<int> labels(G * n_per_group);
    Vector z(p);
    int row = 0;
    for (int g = 0; g < G; ++g) {
        for (int i = 0; i < n_per_group; ++i, ++row) {
            for (int j = 0; j < p; ++j) z[j] = gauss(rng);
            X.row(row) = spec.means.row(g) + (L * z).transpose();
            labels[row] = g + 1;
        }
    }
    return make_dataset(std::move(X), std::move(labels), G);
}

LabeledDataset sample_dataset(const SimScenario& sc) {
    Rng rng(derive_seed(sc.seed, kSingleDrawStream));
    return sample_dataset(population_spec(sc), sc.n, rng);
}

std::vector<int> null_coordinates(const SimScenario& sc) {
    const Matrix M = build_means(sc);
    std::vector<int> idx;
    for (int j = 0; j < sc.p; ++j) {
        bool equal = true;
        for (int g = 1; g < sc.G && equal; ++g)
            equal = M(g, j) == M(0, j);
        if (equal) idx.push_back(j);
    }
    return idx;
}

int count_false_positives(const std::vector<int>& support,
                          const SimScenario& sc) {
    const auto nulls = null_coordinates(sc); // sorted ascending
    int fp = 0;
    for (int j : support)
        if (std::binary_search(nulls.begin(), nulls.end(), j)) ++fp;
    return fp;
}

namespace {

struct Moments {
    double mean = 0.0, sd = 0.0;
};

template <typename Get>
Moments moments(const std::vector<ReplicationResult>& reps, Get get) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : reps)
        if (!r.failed) {
            sum += get(r);
            ++n;
        }
    Moments m;
    if (n == 0) return m;
    m.mean = sum / n;
    if (n > 1) {
        double ss = 0.0;
        for (const auto& r : reps)
            if (!r.failed) ss += (get(r) - m.mean) * (get(r) - m.mean);
        m.sd = std::sqrt(ss / (n - 1));
    }
    return m;
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    validate(config.scenario);
    if (config.replications < 1)
        throw std::invalid_argument("experiment: need at least 1 replication");

    ExperimentReport report;
    report.scenario = config.scenario;
    report.replications = config.replications;

    const PopulationSpec spec = population_spec(config.scenario);
    const DiscriminantModel oracle = oracle_model(spec);

    report.reps.resize(config.replications);
    for (int r = 0; r < config.replications; ++r) {
        ReplicationResult& res = report.reps[r];
        res.rep = r;
        const std::uint64_t rep_seed =
            derive_seed(config.scenario.seed, kRepStreamBase + r);
        try {
            Rng train_rng(derive_seed(rep_seed, 0));
            Rng test_rng(derive_seed(rep_seed, 1));
            const LabeledDataset train =
                sample_dataset(spec, config.scenario.n, train_rng);
            const LabeledDataset test =
                sample_dataset(spec, config.scenario.n, test_rng);

            CvOptions cv = config.cv;
            cv.seed = derive_seed(rep_seed, 2);
            const CvReport cvr = cross_validate(train, cv);

            const DiscriminantModel model = fit_model(train, cvr.chosen_fit.V);
            res.test_error_pct =
                100.0 * error_rate(classify(model, test.X), test.labels);
            res.oracle_error_pct =
                100.0 * error_rate(classify(oracle, test.X), test.labels);
            res.n_selected = cvr.chosen_support_size;
            res.n_false_positives =
                count_false_positives(cvr.chosen_fit.support(), config.scenario);
            res.chosen_lambda = cvr.best_lambda;
            res.chosen_converged = cvr.chosen_fit.converged;
            res.cv_all_converged = cvr.converged.minCoeff() == 1;
        } catch (const std::exception& e) {
            res.failed = true;
            res.error = e.what();
            ++report.n_failed;
        }
        if (config.progress) config.progress(r + 1, config.replications);
    }

    const auto err = moments(report.reps, [](const ReplicationResult& r) {
        return r.test_error_pct;
    });
    report.mean_error_pct = err.mean;
    report.sd_error_pct = err.sd;
    const auto orc = moments(report.reps, [](const ReplicationResult& r) {
        return r.oracle_error_pct;
    });
    report.mean_oracle_pct = orc.mean;
    report.sd_oracle_pct = orc.sd;
    const auto sel = moments(report.reps, [](const ReplicationResult& r) {
        return double(r.n_selected);
    });
    report.mean_selected = sel.mean;
    report.sd_selected = sel.sd;
    const auto fp = moments(report.reps, [](const ReplicationResult& r) {
        return double(r.n_false_positives);
    });
    report.mean_false_positives = fp.mean;
    report.sd_false_positives = fp.sd;
    return report;
}

} // namespace mgsda
