#include <benchmark/benchmark.h>

#include <random>

#include "stablab/challenges.hpp"
#include "stablab/fullgroup.hpp"
#include "stablab/irs.hpp"
#include "stablab/marked.hpp"
#include "stablab/oracle.hpp"
#include "stablab/vershik.hpp"

using namespace stablab;

namespace {

GenTuple random_gset(std::mt19937_64& rng, std::size_t m) {
  std::vector<Perm> ps;
  for (int i = 0; i < 2; ++i) {
    std::vector<std::uint32_t> img(m);
    for (std::uint32_t k = 0; k < m; ++k) img[k] = k;
    std::shuffle(img.begin(), img.end(), rng);
    ps.emplace_back(img);
  }
  return GenTuple(ps);
}

void BM_EnumerateBall(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ball(2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateBall)->DenseRange(4, 8, 2);

void BM_MarkedNuAltVsAZ(benchmark::State& state) {
  const auto alt = alt_oracle(static_cast<int>(state.range(0)));
  const auto az = az_oracle();
  for (auto _ : state) benchmark::DoNotOptimize(marked_nu(*alt, *az, 8));
}
BENCHMARK(BM_MarkedNuAltVsAZ)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_IrsOfGset(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const GenTuple x = random_gset(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(irs_of_gset(x, 3));
}
BENCHMARK(BM_IrsOfGset)->Arg(16)->Arg(256);

void BM_DGen(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const GenTuple x = random_gset(rng, 8), y = random_gset(rng, 8);
  const bool exact = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact ? d_gen_exact(x, y) : d_gen_bound(x, y, 8, 0));
  }
}
BENCHMARK(BM_DGen)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FullGroupBall(benchmark::State& state) {
  const SubshiftPtr fib = Subshift::create(Substitution::fibonacci());
  const std::vector<TableElement> s{three_cycle(ClopenSet::cylinder(fib, "aabaa")),
                                    three_cycle(ClopenSet::cylinder(fib, "babaab"))};
  for (auto _ : state) benchmark::DoNotOptimize(ball_elements(s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FullGroupBall)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
