#include "flexagg/der.hpp"
#include "flexagg/hpd.hpp"
#include "flexagg/membership.hpp"
#include "flexagg/msum.hpp"
#include "flexagg/volume.hpp"

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

using namespace flexagg;

namespace {

HPolytope battery(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    der::BatteryParams p;
    p.p_min = 0.0;
    p.p_max = 3.0 + 1.5 * u(gen);
    p.a = 0.9 + 0.1 * u(gen);
    p.e0 = 0.2 + 0.4 * u(gen);
    p.gamma = 0.035 + 0.018 * u(gen);
    p.horizon = 6;
    return der::battery_polytope(p);
}

std::vector<HPolytope> battery_fleet(std::size_t n) {
    std::mt19937_64 gen(7);
    std::vector<HPolytope> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(battery(gen));
    return out;
}

std::vector<HPolytope> inverter_fleet(std::size_t n) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.5, 1.0);
    std::vector<HPolytope> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(der::inverter_polytope({1.0, 0.0, u(gen), 1.37, 24}));
    return out;
}

const HPolytope& sample_battery() {
    static const HPolytope p = battery_fleet(1).front();
    return p;
}

template <bool Parallel>
void BM_mc_volume(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? mc_volume(sample_battery(), n, 1) : mc_volume_serial(sample_battery(), n, 1));
}

template <bool Parallel>
void BM_staged_coverage(benchmark::State& state) {
    const auto tree = hpd_decompose(sample_battery(), {2, 1e-6, std::nullopt});
    std::vector<AlignedBox> boxes;
    std::vector<int> stages;
    for (const auto& n : tree.nodes) boxes.push_back(n.box), stages.push_back(n.stage);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto r = Parallel ? mc_staged_coverage(sample_battery(), boxes, stages, 3, n, 1)
                          : mc_staged_coverage_serial(sample_battery(), boxes, stages, 3, n, 1);
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_decompose_fleet(benchmark::State& state) {
    const auto fleet = inverter_fleet(static_cast<std::size_t>(state.range(0)));
    const HpdSettings settings{2, 1e-6, PrototypeRatios{{0.38}}};
    for (auto _ : state) {
        auto t = Parallel ? decompose_fleet(fleet, settings) : decompose_fleet_serial(fleet, settings);
        benchmark::DoNotOptimize(t);
    }
}

template <bool Parallel>
void BM_union_msum(benchmark::State& state) {
    const auto fleet = inverter_fleet(static_cast<std::size_t>(state.range(0)));
    const auto trees = decompose_fleet(fleet, {1, 1e-6, PrototypeRatios{{0.38}}});
    const auto sel = select_candidates(trees, CandidatePolicy::stage01_faces);
    for (auto _ : state) {
        auto a = Parallel ? union_msum(trees, sel) : union_msum_serial(trees, sel);
        benchmark::DoNotOptimize(a);
    }
}

template <bool Parallel>
void BM_sum_coverage(benchmark::State& state) {
    const auto fleet = battery_fleet(3);
    const MinkowskiSumOracle oracle(fleet);
    const auto trees = decompose_fleet(fleet, {1, 1e-6, std::nullopt});
    const std::vector<std::vector<AlignedBox>> tiers{
        union_msum(trees, select_candidates(trees, CandidatePolicy::stage01_faces)).boxes};
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto r = Parallel ? mc_sum_coverage(oracle, tiers, n, 1) : mc_sum_coverage_serial(oracle, tiers, n, 1);
        benchmark::DoNotOptimize(r);
    }
}

} // namespace

BENCHMARK(BM_mc_volume<false>)->Arg(1 << 16);
BENCHMARK(BM_mc_volume<true>)->Arg(1 << 16);
BENCHMARK(BM_staged_coverage<false>)->Arg(1 << 16);
BENCHMARK(BM_staged_coverage<true>)->Arg(1 << 16);
BENCHMARK(BM_decompose_fleet<false>)->Arg(16);
BENCHMARK(BM_decompose_fleet<true>)->Arg(16);
BENCHMARK(BM_union_msum<false>)->Arg(100);
BENCHMARK(BM_union_msum<true>)->Arg(100);
BENCHMARK(BM_sum_coverage<false>)->Arg(1 << 13);
BENCHMARK(BM_sum_coverage<true>)->Arg(1 << 13);

BENCHMARK_MAIN();
