// mgsda: sparse multi-group discriminant analysis from the command line.
//
// Subcommands: fit, predict, cv, simulate, verify. All CSVs use a comma
// separator, '.' decimal point and a header row. Exit codes: 0 on success,
// 1 on usage or runtime error, 2 on verify failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgsda/classifier.hpp"
#include "mgsda/csv.hpp"
#include "mgsda/cv.hpp"
#include "mgsda/model_io.hpp"
#include "mgsda/simlab.hpp"
#include "mgsda/solver.hpp"
#include "mgsda/verify.hpp"

namespace {

using namespace mgsda;

struct GridSpec {
    int n = 20;
    double min_frac = 0.05;
};

GridSpec parse_grid(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--grid", "expected n,min-frac (e.g. 20,0.05)");
    GridSpec g;
    try {
        g.n = std::stoi(text.substr(0, comma));
        g.min_frac = parse_double(text.substr(comma + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected n,min-frac (e.g. 20,0.05)");
    }
    if (g.n < 1 || !(g.min_frac > 0.0 && g.min_frac <= 1.0))
        throw CLI::ValidationError("--grid", "need n >= 1 and min-frac in (0,1]");
    return g;
}

Standardize parse_standardize(const std::string& mode) {
    if (mode == "none") return Standardize::None;
    if (mode == "feature") return Standardize::Feature;
    if (mode == "row") return Standardize::Row;
    throw CLI::ValidationError("--standardize", "must be none, feature or row");
}

std::string fmt(double x) { return format_double(x); }

// ---------------------------------------------------------------- fit

struct FitArgs {
    std::string input, output, label_col = "label";
    std::optional<double> lambda;
    std::string grid = "20,0.05";
    double tol = 1e-6;
    int max_sweeps = 1000;
    std::string standardize = "none";
};

int cmd_fit(const FitArgs& args) {
    const LabeledTable table = read_labeled_csv(args.input, args.label_col);
    const Standardization std_fit =
        fit_standardization(table.X, parse_standardize(args.standardize));
    const LabeledDataset data = make_dataset(
        apply_standardization(table.X, std_fit), table.labels, table.n_groups);

    const GroupStatistics st = group_statistics(data);
    const PenalizedProblem prob = make_problem(st);

    SolveOptions opts;
    opts.tol = args.tol;
    opts.max_sweeps = args.max_sweeps;

    std::vector<double> lambdas;
    if (args.lambda) {
        lambdas = {*args.lambda};
    } else {
        const GridSpec g = parse_grid(args.grid);
        lambdas = default_lambda_grid(lambda_max(st.D), g.n, g.min_frac);
    }
    const SolutionPath path = solve_path(prob, lambdas, opts);

    ModelFile model;
    model.groups = data.n_groups;
    model.features = data.p();
    model.standardization = std_fit;
    model.label_names = table.label_names;
    model.priors = st.priors;
    model.means = st.group_means;
    model.W = st.W;
    for (const auto& sol : path.solutions)
        model.entries.push_back({sol.lambda, sol.converged, sol.V});
    model.selected = static_cast<int>(model.entries.size()) - 1;
    write_model(args.output, model);

    std::cout << "lambda,support,converged,objective\n";
    int not_converged = 0;
    for (const auto& sol : path.solutions) {
        std::cout << fmt(sol.lambda) << ',' << sol.support_size() << ','
                  << (sol.converged ? 1 : 0) << ',' << fmt(sol.objective)
                  << '\n';
        if (!sol.converged) ++not_converged;
    }
    std::cout << "model written to " << args.output << " ("
              << model.entries.size() << " entr"
              << (model.entries.size() == 1 ? "y" : "ies") << ")\n";
    if (not_converged)
        std::cerr << "warning: " << not_converged
                  << " solve(s) did not reach the KKT tolerance\n";
    return 0;
}

// ---------------------------------------------------------------- predict

struct PredictArgs {
    std::string input, model, output;
    std::optional<double> select_lambda;
};

int cmd_predict(const PredictArgs& args) {
    const ModelFile model = read_model(args.model);
    int entry = model.selected;
    if (args.select_lambda) {
        double best = -1.0;
        for (std::size_t e = 0; e < model.entries.size(); ++e) {
            const double gap = std::abs(model.entries[e].lambda - *args.select_lambda);
            if (best < 0.0 || gap < best) {
                best = gap;
                entry = static_cast<int>(e);
            }
        }
        std::cerr << "using entry at lambda = "
                  << fmt(model.entries[entry].lambda) << '\n';
    }

    const FeatureTable table = read_feature_csv(args.input);
    if (table.X.cols() != model.features)
        throw std::runtime_error(
            "feature count mismatch: model has " +
            std::to_string(model.features) + ", input has " +
            std::to_string(table.X.cols()));

    const DiscriminantModel clf = to_classifier(model, entry);
    const std::vector<int> labels = classify(clf, table.X);
    std::vector<std::string> names(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        names[i] = model.label_names[labels[i] - 1];
    write_labels_csv(args.output, names);
    std::cout << labels.size() << " predictions written to " << args.output
              << '\n';
    return 0;
}

// ---------------------------------------------------------------- cv

struct CvArgs {
    std::string input, output, label_col = "label";
    std::string model; // optional model output at the chosen lambda
    std::string grid = "20,0.05";
    int folds = 5;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    int max_sweeps = 1000;
    std::string standardize = "none";
};

int cmd_cv(const CvArgs& args) {
    const LabeledTable table = read_labeled_csv(args.input, args.label_col);
    const Standardization std_fit =
        fit_standardization(table.X, parse_standardize(args.standardize));
    const LabeledDataset data = make_dataset(
        apply_standardization(table.X, std_fit), table.labels, table.n_groups);

    const GridSpec g = parse_grid(args.grid);
    CvOptions opts;
    opts.folds = args.folds;
    opts.seed = args.seed;
    opts.tol = args.tol;
    opts.max_sweeps = args.max_sweeps;
    opts.grid_size = g.n;
    opts.grid_min_frac = g.min_frac;

    const CvReport report = cross_validate(data, opts);
    if (report.folds_reduced)
        std::cerr << "warning: folds reduced to " << report.folds_used
                  << " (smallest group size)\n";

    std::ofstream out(args.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + args.output);
    std::vector<std::string> header = {"lambda", "mean_error"};
    for (int k = 0; k < report.folds_used; ++k)
        header.push_back("fold_" + std::to_string(k + 1));
    header.push_back("n_converged");
    header.push_back("chosen");
    out << join_csv(header) << '\n';
    for (std::size_t l = 0; l < report.lambdas.size(); ++l) {
        std::vector<std::string> row = {fmt(report.lambdas[l]),
                                        fmt(report.mean_errors[l])};
        for (int k = 0; k < report.folds_used; ++k)
            row.push_back(fmt(report.fold_errors(k, l)));
        row.push_back(std::to_string(report.converged.col(l).sum()));
        row.push_back(l == static_cast<std::size_t>(report.best_index) ? "1"
                                                                       : "0");
        out << join_csv(row) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + args.output);
    out.close();

    std::cout << "chosen lambda: " << fmt(report.best_lambda)
              << " (mean error " << fmt(report.mean_errors[report.best_index])
              << ", " << report.chosen_support_size << " features)\n";

    if (!args.model.empty()) {
        const GroupStatistics st = group_statistics(data);
        ModelFile model;
        model.groups = data.n_groups;
        model.features = data.p();
        model.standardization = std_fit;
        model.label_names = table.label_names;
        model.priors = st.priors;
        model.means = st.group_means;
        model.W = st.W;
        model.entries.push_back({report.best_lambda,
                                 report.chosen_fit.converged,
                                 report.chosen_fit.V});
        model.selected = 0;
        write_model(args.model, model);
        std::cout << "model written to " << args.model << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string output, config, dump_reps, covariance_file;
    std::string structure = "identity";
    int p = 100, s = 10, groups = 2, n = 100;
    double mean_scale = 1.0;
    double blend_alpha = 0.0;
    int replications = 25;
    std::uint64_t seed = 1;
    int folds = 5;
    std::string grid = "20,0.05";
    double tol = 1e-6;
    int max_sweeps = 1000;
    bool quiet = false;
};

void apply_config_file(SimulateArgs& args, const std::string& path,
                       const CLI::App* cmd) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    // Flags given on the command line beat the file.
    auto overridden = [cmd](const std::string& flag) {
        return cmd->count("--" + flag) > 0;
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r' ||
                                 line.back() == '\t'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        std::string key = line.substr(start, eq - start);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
            key.pop_back();
        std::string value = line.substr(eq + 1);
        const auto vstart = value.find_first_not_of(" \t");
        value = vstart == std::string::npos ? "" : value.substr(vstart);

        if (overridden(key)) continue;
        if (key == "structure") args.structure = value;
        else if (key == "p") args.p = std::stoi(value);
        else if (key == "s") args.s = std::stoi(value);
        else if (key == "groups") args.groups = std::stoi(value);
        else if (key == "n") args.n = std::stoi(value);
        else if (key == "mean-scale") args.mean_scale = parse_double(value);
        else if (key == "blend-alpha") args.blend_alpha = parse_double(value);
        else if (key == "replications") args.replications = std::stoi(value);
        else if (key == "seed") args.seed = std::stoull(value);
        else if (key == "folds") args.folds = std::stoi(value);
        else if (key == "grid") args.grid = value;
        else if (key == "tol") args.tol = parse_double(value);
        else if (key == "max-sweeps") args.max_sweeps = std::stoi(value);
        else if (key == "covariance-file") args.covariance_file = value;
        else if (key == "dump-reps") args.dump_reps = value;
        else if (key == "output") { if (args.output.empty()) args.output = value; }
        else
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
    }
}

int cmd_simulate(SimulateArgs& args, const CLI::App* cmd) {
    if (!args.config.empty()) apply_config_file(args, args.config, cmd);
    if (args.output.empty())
        throw CLI::ValidationError("--output", "an output path is required");

    ExperimentConfig config;
    config.scenario.structure = cov_structure_from_string(args.structure);
    config.scenario.p = args.p;
    config.scenario.s = args.s;
    config.scenario.G = args.groups;
    config.scenario.n = args.n;
    config.scenario.mean_scale = args.mean_scale;
    config.scenario.seed = args.seed;
    if (config.scenario.structure == CovStructure::FromFile) {
        if (args.covariance_file.empty())
            throw CLI::ValidationError("--covariance-file",
                                       "required for structure fromfile");
        config.scenario.sigma_file = read_matrix_csv(args.covariance_file);
        if (cmd->count("--p") == 0)
            config.scenario.p = static_cast<int>(config.scenario.sigma_file.rows());
        config.scenario.blend_alpha = args.blend_alpha;
    }
    config.replications = args.replications;
    const GridSpec g = parse_grid(args.grid);
    config.cv.folds = args.folds;
    config.cv.grid_size = g.n;
    config.cv.grid_min_frac = g.min_frac;
    config.cv.tol = args.tol;
    config.cv.max_sweeps = args.max_sweeps;
    if (!args.quiet)
        config.progress = [](int done, int total) {
            std::cerr << "replication " << done << "/" << total << "\n";
        };

    const ExperimentReport report = run_experiment(config);

    std::ofstream out(args.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + args.output);
    out << "structure,groups,p,s,n,mean_scale,replications,n_failed,"
           "mean_error_pct,sd_error_pct,mean_oracle_pct,sd_oracle_pct,"
           "mean_selected,sd_selected,mean_false_positives,sd_false_positives\n";
    std::vector<std::string> row = {
        to_string(report.scenario.structure),
        std::to_string(report.scenario.G),
        std::to_string(report.scenario.p),
        std::to_string(report.scenario.s),
        std::to_string(report.scenario.n),
        fmt(report.scenario.mean_scale),
        std::to_string(report.replications),
        std::to_string(report.n_failed),
        fmt(report.mean_error_pct),
        fmt(report.sd_error_pct),
        fmt(report.mean_oracle_pct),
        fmt(report.sd_oracle_pct),
        fmt(report.mean_selected),
        fmt(report.sd_selected),
        fmt(report.mean_false_positives),
        fmt(report.sd_false_positives)};
    out << join_csv(row) << '\n';
    if (!out) throw std::runtime_error("write failed: " + args.output);
    out.close();

    if (!args.dump_reps.empty()) {
        std::ofstream reps(args.dump_reps, std::ios::binary);
        if (!reps) throw std::runtime_error("cannot write " + args.dump_reps);
        reps << "rep,failed,test_error_pct,oracle_error_pct,n_selected,"
                "n_false_positives,chosen_lambda,chosen_converged,"
                "cv_all_converged\n";
        for (const auto& r : report.reps) {
            std::vector<std::string> cells = {
                std::to_string(r.rep),
                r.failed ? "1" : "0",
                fmt(r.test_error_pct),
                fmt(r.oracle_error_pct),
                std::to_string(r.n_selected),
                std::to_string(r.n_false_positives),
                fmt(r.chosen_lambda),
                r.chosen_converged ? "1" : "0",
                r.cv_all_converged ? "1" : "0"};
            reps << join_csv(cells) << '\n';
        }
        if (!reps) throw std::runtime_error("write failed: " + args.dump_reps);
    }

    std::cout << "error " << fmt(report.mean_error_pct) << "("
              << fmt(report.sd_error_pct) << ")  oracle "
              << fmt(report.mean_oracle_pct) << "(" << fmt(report.sd_oracle_pct)
              << ")  selected " << fmt(report.mean_selected) << "("
              << fmt(report.sd_selected) << ")  false positives "
              << fmt(report.mean_false_positives) << "("
              << fmt(report.sd_false_positives) << ")\n";
    if (report.n_failed)
        std::cerr << "warning: " << report.n_failed
                  << " replication(s) failed\n";
    return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(std::uint64_t seed) {
    const auto suites = run_all_suites(seed);
    bool ok = true;
    for (const auto& suite : suites) {
        for (const auto& check : suite.checks) {
            std::cout << (check.passed ? "PASS" : "FAIL") << "  " << suite.name
                      << ": " << check.name << "  (observed " << fmt(check.value)
                      << ", limit " << fmt(check.threshold) << ")\n";
            ok = ok && check.passed;
        }
    }
    std::cout << (ok ? "all suites passed" : "verification FAILED") << '\n';
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse multi-group linear discriminant analysis"};
    app.require_subcommand(1);

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit canonical vectors from a labeled CSV");
    fit_cmd->add_option("--input", fit.input, "labeled CSV")->required();
    fit_cmd->add_option("--output", fit.output, "model file to write")->required();
    fit_cmd->add_option("--label-col", fit.label_col, "label column name");
    double fit_lambda = 0.0;
    auto* fit_lambda_opt = fit_cmd->add_option("--lambda", fit_lambda, "single penalty value");
    fit_cmd->add_option("--grid", fit.grid, "path grid as n,min-frac");
    fit_cmd->add_option("--tol", fit.tol, "solver tolerance");
    fit_cmd->add_option("--max-sweeps", fit.max_sweeps, "sweep cap per solve");
    fit_cmd->add_option("--standardize", fit.standardize, "none|feature|row");

    PredictArgs predict;
    auto* predict_cmd = app.add_subcommand("predict", "Label new rows with a fitted model");
    predict_cmd->add_option("--input", predict.input, "feature CSV")->required();
    predict_cmd->add_option("--model", predict.model, "model file")->required();
    predict_cmd->add_option("--output", predict.output, "label CSV to write")->required();
    double predict_lambda = 0.0;
    auto* predict_lambda_opt = predict_cmd->add_option(
        "--select-lambda", predict_lambda, "pick the model entry nearest this penalty");

    CvArgs cv;
    auto* cv_cmd = app.add_subcommand("cv", "Cross-validate the penalty");
    cv_cmd->add_option("--input", cv.input, "labeled CSV")->required();
    cv_cmd->add_option("--output", cv.output, "report CSV to write")->required();
    cv_cmd->add_option("--label-col", cv.label_col, "label column name");
    cv_cmd->add_option("--model", cv.model, "also write a model at the chosen penalty");
    cv_cmd->add_option("--grid", cv.grid, "grid as n,min-frac");
    cv_cmd->add_option("--folds", cv.folds, "fold count");
    cv_cmd->add_option("--seed", cv.seed, "fold shuffle seed");
    cv_cmd->add_option("--tol", cv.tol, "solver tolerance");
    cv_cmd->add_option("--max-sweeps", cv.max_sweeps, "sweep cap per solve");
    cv_cmd->add_option("--standardize", cv.standardize, "none|feature|row");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Replicated synthetic experiments");
    sim_cmd->add_option("--output", sim.output, "aggregate report CSV");
    sim_cmd->add_option("--config", sim.config, "key=value config file");
    sim_cmd->add_option("--structure", sim.structure,
                        "identity|equicorrelation|autoregressive|bernoulli|fromfile");
    sim_cmd->add_option("--p", sim.p, "dimension");
    sim_cmd->add_option("--s", sim.s, "signal coordinates");
    sim_cmd->add_option("--groups", sim.groups, "group count (2 or 3)");
    sim_cmd->add_option("--n", sim.n, "per-group sample size");
    sim_cmd->add_option("--mean-scale", sim.mean_scale, "signal strength d");
    sim_cmd->add_option("--blend-alpha", sim.blend_alpha,
                        "blend (1-a)S + aI for fromfile");
    sim_cmd->add_option("--covariance-file", sim.covariance_file,
                        "CSV covariance for fromfile");
    sim_cmd->add_option("--replications", sim.replications, "replication count");
    sim_cmd->add_option("--seed", sim.seed, "base seed");
    sim_cmd->add_option("--folds", sim.folds, "CV folds");
    sim_cmd->add_option("--grid", sim.grid, "CV grid as n,min-frac");
    sim_cmd->add_option("--tol", sim.tol, "solver tolerance");
    sim_cmd->add_option("--max-sweeps", sim.max_sweeps, "sweep cap per solve");
    sim_cmd->add_option("--dump-reps", sim.dump_reps, "per-replication CSV");
    sim_cmd->add_flag("--quiet", sim.quiet, "suppress the replication counter");

    std::uint64_t verify_seed = 42;
    auto* verify_cmd = app.add_subcommand("verify", "Run the property suites");
    verify_cmd->add_option("--seed", verify_seed, "suite seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*fit_cmd) {
            if (*fit_lambda_opt) fit.lambda = fit_lambda;
            return cmd_fit(fit);
        }
        if (*predict_cmd) {
            if (*predict_lambda_opt) predict.select_lambda = predict_lambda;
            return cmd_predict(predict);
        }
        if (*cv_cmd) return cmd_cv(cv);
        if (*sim_cmd) return cmd_simulate(sim, sim_cmd);
        if (*verify_cmd) return cmd_verify(verify_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
