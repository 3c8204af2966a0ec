#include <benchmark/benchmark.h>

#include <random>

#include "fpp/geometry.hpp"
#include "fpp/polyfp.hpp"
#include "fpp/simplicial.hpp"
#include "fpp/vanishing.hpp"

namespace {

fpp::Mat random_matrix(std::size_t n, int bound) {
    std::mt19937_64 rng(42);
    fpp::Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = static_cast<std::int64_t>(rng() % (2 * bound + 1)) - bound;
    return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
    fpp::Mat m = random_matrix(static_cast<std::size_t>(state.range(0)), 50);
    for (auto _ : state) benchmark::DoNotOptimize(fpp::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(12);

void BM_CoinvariantsRow7(benchmark::State& state) {
    const auto& row = fpp::registry()[6];
    for (auto _ : state)
        benchmark::DoNotOptimize(
            fpp::coinvariants(row.h1, row.aut_generators[1].torsion_action));
}
BENCHMARK(BM_CoinvariantsRow7);

void BM_FactorCyclotomic(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(fpp::factor_cyclotomic_mod_p(state.range(0), 2));
}
BENCHMARK(BM_FactorCyclotomic)->Arg(7)->Arg(31)->Arg(63);

void BM_RunVanishingRow7(benchmark::State& state) {
    const auto& row = fpp::registry()[6];
    for (auto _ : state) benchmark::DoNotOptimize(fpp::run_vanishing(row));
}
BENCHMARK(BM_RunVanishingRow7);

void BM_HirzebruchJung(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fpp::hirzebruch_jung(199, 117));
}
BENCHMARK(BM_HirzebruchJung);

void BM_TorusH1(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto vid = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
    std::vector<std::vector<int>> tris;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            tris.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            tris.push_back({vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)});
        }
    fpp::SimplicialComplex torus = fpp::closure(tris);
    for (auto _ : state) benchmark::DoNotOptimize(fpp::h1(torus));
}
BENCHMARK(BM_TorusH1)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
