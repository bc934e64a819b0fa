#include <benchmark/benchmark.h>

#include <vector>

#include "coglab/backtest.hpp"
#include "coglab/garch.hpp"
#include "coglab/macrostate.hpp"
#include "coglab/rng.hpp"
#include "coglab/stats.hpp"
#include "coglab/textlab.hpp"

using namespace coglab;

namespace {

std::vector<double> random_series(std::size_t n, std::uint64_t seed, double lo = -1.0,
                                  double hi = 1.0) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = uniform(rng, lo, hi);
    return out;
}

void BM_GjrVolatilityPath(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto series = random_series(n, 1);
    const std::vector<macro::Quadrant> path(n, macro::Quadrant::B_StructuralTearing);
    const auto arsenal = garch::ParamArsenal::defaults();
    for (auto _ : state) {
        auto run = garch::run_volatility(series, path, arsenal,
                                         garch::SelectionMode::Dynamic, 0.1);
        benchmark::DoNotOptimize(run.h.back());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_GjrVolatilityPath)->Arg(256)->Arg(4096);

void BM_Pearson(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_series(n, 2);
    const auto y = random_series(n, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stats::pearson(x, y).r);
    }
}
BENCHMARK(BM_Pearson)->Arg(23)->Arg(1000);

void BM_ShapiroWilk(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(4);
    std::vector<double> sample(n);
    for (auto& v : sample) v = normal(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stats::shapiro_wilk(sample).w);
    }
}
BENCHMARK(BM_ShapiroWilk)->Arg(155)->Arg(5000);

void BM_Mdi(benchmark::State& state) {
    auto reg = DimensionRegistry::default_registry();
    Rng rng(5);
    std::map<std::string, double> a, b;
    for (const auto& dim : reg->labels()) {
        a[dim] = uniform(rng, -1.0, 1.0);
        b[dim] = uniform(rng, -1.0, 1.0);
    }
    PersonaDayState day{Date(2025, 1, 2), CognitiveVector(reg, a),
                        CognitiveVector(reg, b), 0.0, false, false};
    for (auto _ : state) {
        benchmark::DoNotOptimize(macro::mdi(day));
    }
}
BENCHMARK(BM_Mdi);

void BM_SimulatePortfolio(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(6);
    backtest::PriceSeries prices;
    std::vector<double> exposures;
    double level = 100.0;
    for (std::size_t i = 0; i < n; ++i) {
        level *= 1.0 + uniform(rng, -0.02, 0.02);
        prices.points.push_back({Date(2015, 1, 1).plus_days(static_cast<int>(i)), level,
                                 {}, {}, {}});
        exposures.push_back(0.5 * uniform_index(rng, 3));
    }
    const backtest::BacktestConfig cfg;
    for (auto _ : state) {
        auto res = backtest::simulate_portfolio(prices, exposures, cfg);
        benchmark::DoNotOptimize(res.equity.back());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SimulatePortfolio)->Arg(2520);

void BM_GenerateComments(benchmark::State& state) {
    textlab::TemplateSet templates;
    templates.cells[{Persona::Novice, "crash"}] = {
        "又跌了这么多{event}真的让人受不了账户全是绿色的我现在完全不知道该怎么办了{slang}"};
    templates.cells[{Persona::Veteran, "crash"}] = {
        "这波下跌其实早有征兆{event}量能萎缩结构恶化建议大家控制仓位等待企稳信号{slang}"};
    textlab::SlangDictionary slang;
    slang.categories["Despair"] = {{"关灯吃面", ""}};
    slang.categories["Euphoria"] = {{"满仓干", ""}};
    const textlab::GenerationContext ctx{"crash", "跌破三千点"};
    const std::map<Persona, double> dist = {{Persona::Novice, 0.7},
                                            {Persona::Veteran, 0.3}};
    textlab::GenerationPhysics physics;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto batch = textlab::generate_synthetic_comments(ctx, dist, physics, slang,
                                                          templates, 100, seed++);
        benchmark::DoNotOptimize(batch.size());
    }
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_GenerateComments);

void BM_PirSimulate(benchmark::State& state) {
    auto reg = DimensionRegistry::default_registry();
    garch::PirState init;
    init.date = Date(2025, 5, 13);
    init.novice = CognitiveVector(reg, {{"fear", 0.5}, {"joy", 0.3}, {"trust", 0.4}});
    init.veteran = CognitiveVector(reg, {{"fear", 0.6}, {"joy", 0.1}, {"trust", 0.2}});
    init.macro_state = {init.date, 0.82, 0.0, 0.25};
    init.dominant = macro::Quadrant::B_StructuralTearing;
    garch::PirConfig cfg;
    cfg.decay = affect::DecayTable::defaults();
    cfg.shock = affect::ShockConfig::defaults();
    cfg.satellite = affect::SatelliteCoeffs::defaults();
    cfg.arsenal = garch::ParamArsenal::defaults();
    const garch::ShockSchedule shocks = {{3, "fear_event"}};
    for (auto _ : state) {
        auto traj = garch::pir_simulate(init, shocks, 30, cfg, 7);
        benchmark::DoNotOptimize(traj.back().macro_state.mdi);
    }
}
BENCHMARK(BM_PirSimulate);

}  // namespace

BENCHMARK_MAIN();
