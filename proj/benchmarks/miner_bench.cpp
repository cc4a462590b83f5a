#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "sysrepro/miner.hpp"
#include "sysrepro/rng.hpp"

namespace {

using namespace sysrepro;

TransactionDB synthetic_db(std::size_t transactions, std::size_t names) {
  std::mt19937_64 rng(42);
  TransactionDB db;
  for (std::size_t t = 0; t < transactions; ++t) {
    Transaction tr;
    tr.sentence = t;
    const auto k = 1 + uniform_below(rng, 6);
    for (std::size_t i = 0; i < k; ++i) tr.items.push_back("sys" + std::to_string(uniform_below(rng, names)));
    db.transactions.push_back(std::move(tr));
  }
  return db;
}

void BM_MinePairs(benchmark::State& state) {
  const auto db = synthetic_db(static_cast<std::size_t>(state.range(0)), 24);
  for (auto _ : state) benchmark::DoNotOptimize(mine_pairs(db));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinePairs)->RangeMultiplier(4)->Range(4, 256)->Complexity();

}  // namespace
