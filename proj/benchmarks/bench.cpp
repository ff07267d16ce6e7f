// Microbenchmarks for the hot paths: sufficient statistics, single solves,
// the warm-started path, and prediction throughput.
//
//   ./build/benchmarks/mgsda_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <mgsda/classifier.hpp>
#include <mgsda/cv.hpp>
#include <mgsda/rng.hpp>
#include <mgsda/simlab.hpp>
#include <mgsda/solver.hpp>
#include <mgsda/statistics.hpp>

#include <vector>

using namespace mgsda;

namespace {

LabeledDataset scenario_data(int p, int s, int G, int n, std::uint64_t seed) {
    SimScenario sc;
    sc.p = p;
    sc.s = s;
    sc.G = G;
    sc.n = n;
    sc.seed = seed;
    return sample_dataset(sc);
}

void bm_group_statistics(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const auto data = scenario_data(p, 10, 3, 100, 1);
    for (auto _ : state) {
        auto st = group_statistics(data);
        benchmark::DoNotOptimize(st.T.data());
    }
}
BENCHMARK(bm_group_statistics)->Arg(50)->Arg(100)->Arg(200);

void bm_row_update(benchmark::State& state) {
    Rng rng(derive_seed(2, 0));
    std::normal_distribution<double> normal;
    Eigen::RowVectorXd r(3), out(3);
    for (int i = 0; i < 3; ++i) r(i) = normal(rng);
    const double norm = r.norm();
    double lambda = 0.4 * norm;
    for (auto _ : state) {
        detail::standard_row_update(r, 1.7, lambda, out);
        benchmark::DoNotOptimize(out.data());
        lambda = lambda < norm ? lambda * 1.0000001 : 0.4 * norm;
    }
}
BENCHMARK(bm_row_update);

void bm_solve_single(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const auto data = scenario_data(p, 10, 2, 100, 3);
    const auto prob = make_problem(group_statistics(data));
    const double lambda = 0.3 * lambda_max(prob.D);
    for (auto _ : state) {
        auto sol = solve(prob, lambda);
        benchmark::DoNotOptimize(sol.V.data());
    }
}
BENCHMARK(bm_solve_single)->Arg(50)->Arg(100)->Arg(200);

void bm_solve_path(benchmark::State& state) {
    const auto data = scenario_data(100, 10, 2, 100, 4);
    const auto prob = make_problem(group_statistics(data));
    for (auto _ : state) {
        auto path = solve_path(prob);
        benchmark::DoNotOptimize(path.solutions.back().V.data());
    }
}
BENCHMARK(bm_solve_path);

void bm_cross_validate(benchmark::State& state) {
    const auto data = scenario_data(100, 10, 2, 100, 5);
    CvOptions opts;
    for (auto _ : state) {
        auto report = cross_validate(data, opts);
        benchmark::DoNotOptimize(report.best_lambda);
    }
}
BENCHMARK(bm_cross_validate);

void bm_predict(benchmark::State& state) {
    const auto data = scenario_data(100, 10, 3, 100, 6);
    const auto st = group_statistics(data);
    const auto sol = solve(make_problem(st), 0.3 * lambda_max(st.D));
    const auto model = fit_model(st, sol.V);
    const auto test = scenario_data(100, 10, 3, 500, 7);
    for (auto _ : state) {
        auto labels = classify(model, test.X);
        benchmark::DoNotOptimize(labels.data());
    }
    state.SetItemsProcessed(state.iterations() * test.X.rows());
}
BENCHMARK(bm_predict);

} // namespace

BENCHMARK_MAIN();
