#include <benchmark/benchmark.h>

#include <random>

#include "phl/charformula.hpp"
#include "phl/cosets.hpp"
#include "phl/finitegrp.hpp"
#include "phl/hecke_gl2.hpp"
#include "phl/iwahori.hpp"
#include "phl/matd.hpp"

using namespace phl;

namespace {

MatD random_upper(FieldPtr F, int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ex(0, 3);
  std::uniform_int_distribution<std::uint32_t> dig(1, static_cast<std::uint32_t>(F->Q - 1));
  std::vector<int> exps(static_cast<std::size_t>(m));
  for (auto& x : exps) x = ex(rng);
  std::sort(exps.begin(), exps.end());
  MatD g = MatD::diag(F, exps);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) g.at(i, j) = DElement::from_digits(ex(rng), {dig(rng), dig(rng)}, true);
  return g;
}

void BM_Smith(benchmark::State& st) {
  auto F = make_field(3, 1, 2, 1);
  int m = static_cast<int>(st.range(0));
  std::mt19937_64 rng(1);
  std::vector<MatD> gs;
  for (int i = 0; i < 256; ++i) gs.push_back(random_upper(F, m, rng) * random_k(F, m, 3, rng));
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(smith(gs[i++ % gs.size()]));
}
BENCHMARK(BM_Smith)->Arg(2)->Arg(3)->Arg(4);

void BM_MinorTest(benchmark::State& st) {
  auto F = make_field(3, 1, 2, 1);
  std::mt19937_64 rng(2);
  std::vector<MatD> gs;
  for (int i = 0; i < 256; ++i) gs.push_back(random_upper(F, 3, rng));
  std::size_t i = 0;
  for (auto _ : st) {
    const MatD& g = gs[i++ % gs.size()];
    benchmark::DoNotOptimize(minor_test(g, smith(g)));
  }
}
BENCHMARK(BM_MinorTest);

void BM_SatakeRow(benchmark::State& st) {
  auto F = make_field(2, 1, 2, 1);
  Cochar lam{0, static_cast<int>(st.range(0)), static_cast<int>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(satake_classical(F, lam, Side::U, MuRange::Full));
}
BENCHMARK(BM_SatakeRow)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Conjecture2(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(conjecture2_check({0, 1, 2}, 2, 1, 2, 1));
}
BENCHMARK(BM_Conjecture2)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Steinberg(benchmark::State& st) {
  auto ctx = build_context(2, 3);
  for (auto _ : st) benchmark::DoNotOptimize(steinberg_binvariants(ctx, {}));
}
BENCHMARK(BM_Steinberg)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Simplicity(benchmark::State& st) {
  auto F = make_field(3, 1, 2, 1);
  auto M = build_module(dx_irrep(F, 1, 1), dx_irrep(F, 1, 1));
  for (auto _ : st) benchmark::DoNotOptimize(simplicity_check(M));
}
BENCHMARK(BM_Simplicity)->Unit(benchmark::kMicrosecond);

void BM_RelationSuite(benchmark::State& st) {
  auto F = make_field(2, 1, 2, 1);
  for (auto _ : st) benchmark::DoNotOptimize(relation_suite(F, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_RelationSuite)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_KostkaFoulkes(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kostka_foulkes(DominantWeight::make({4, 2, 1, 0}), DominantWeight::make({2, 2, 2, 1})));
}
BENCHMARK(BM_KostkaFoulkes)->Unit(benchmark::kMicrosecond);

void BM_LusztigKato(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(
        lusztig_kato_check(DominantWeight::make({2, 1}), 3, 1, 1, 0, kCalibratedNormalization));
}
BENCHMARK(BM_LusztigKato)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
