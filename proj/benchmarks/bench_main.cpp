#include <benchmark/benchmark.h>

#include <random>

#include "medlat/checkers.hpp"

using namespace medlat;

namespace {

const RelationSpace& preorder3() {
  static RelationSpace sp =
      enumerate_space(RelFlavor::TotalPreorder, GroundSet::of({"x", "y", "z"}));
  return sp;
}

const RelationSpace& reflexive3() {
  static RelationSpace sp =
      enumerate_space(RelFlavor::ReflexiveRel, GroundSet::of({"a", "b", "c"}));
  return sp;
}

void BM_BuildPreorderSpace(benchmark::State& state) {
  std::vector<std::string> names;
  for (int i = 0; i < state.range(0); ++i)
    names.push_back(std::string(1, static_cast<char>('a' + i)));
  for (auto _ : state) {
    auto sp = enumerate_space(RelFlavor::TotalPreorder, GroundSet::of(names),
                              SpaceOptions{true});
    benchmark::DoNotOptimize(sp.ctx.top);
  }
}
BENCHMARK(BM_BuildPreorderSpace)->Arg(3)->Arg(4);

void BM_BuildReflexiveLattice(benchmark::State& state) {
  for (auto _ : state) {
    auto sp = enumerate_space(RelFlavor::ReflexiveRel, GroundSet::of({"a", "b", "c"}));
    benchmark::DoNotOptimize(sp.ctx.top);
  }
}
BENCHMARK(BM_BuildReflexiveLattice);

void BM_CoMajority(benchmark::State& state) {
  const RelationSpace& sp = preorder3();
  std::mt19937_64 rng(kDefaultSeed);
  std::vector<int> p(state.range(0));
  for (auto _ : state) {
    for (int& e : p) e = rng() % sp.size();
    benchmark::DoNotOptimize(co_majority(sp.ctx, p));
  }
}
BENCHMARK(BM_CoMajority)->Arg(3)->Arg(5)->Arg(9);

void BM_TabulateCoMajority(benchmark::State& state) {
  RuleEnv env = RuleEnv::of(preorder3());
  for (auto _ : state) {
    auto t = tabulate(env, RuleSpec{CoMajorityRule{}}, 3);
    benchmark::DoNotOptimize(t.out.back());
  }
}
BENCHMARK(BM_TabulateCoMajority);

void BM_StrategyProofScan(benchmark::State& state) {
  const RelationSpace& sp = preorder3();
  RuleTable t = tabulate(RuleEnv::of(sp), RuleSpec{CoMajorityRule{}}, 3);
  for (auto _ : state) {
    auto rep = is_strategy_proof(sp.ctx, t);
    benchmark::DoNotOptimize(rep.verdict);
  }
}
BENCHMARK(BM_StrategyProofScan);

void BM_RemotenessScan(benchmark::State& state) {
  const RelationSpace& sp = reflexive3();
  std::mt19937_64 rng(kDefaultSeed);
  std::vector<int> p(3);
  TieBreak tb = TieBreak::identity(sp.size());
  for (auto _ : state) {
    for (int& e : p) e = rng() % sp.size();
    benchmark::DoNotOptimize(generalized_ck(sp.ctx, p, tb));
  }
}
BENCHMARK(BM_RemotenessScan);

void BM_ExtractFilters(benchmark::State& state) {
  const RelationSpace& sp = preorder3();
  RuleTable t = tabulate(RuleEnv::of(sp), RuleSpec{CoMajorityRule{}}, 3);
  for (auto _ : state) {
    auto fam = extract_filters(sp.ctx, t);
    benchmark::DoNotOptimize(fam.per_m.size());
  }
}
BENCHMARK(BM_ExtractFilters);

}  // namespace

BENCHMARK_MAIN();
