#include <benchmark/benchmark.h>

#include "flatsum/characters.hpp"
#include "flatsum/expsums.hpp"
#include "flatsum/flatnum.hpp"

namespace {

flatsum::DirichletCharacter quadratic_character(std::int64_t q) {
  const auto group = flatsum::CharacterGroup::make(flatsum::factorize(q));
  return flatsum::jacobi_character(group);
}

void bm_kloosterman(benchmark::State& state) {
  const std::int64_t q = state.range(0);
  const auto chi = quadratic_character(q);
  std::int64_t m = 1;
  for (auto _ : state) {
    auto result = flatsum::kloosterman(chi, m, 1, q);
    benchmark::DoNotOptimize(result.value);
    m = m % (q - 1) + 1;
  }
}

void bm_t_sum(benchmark::State& state) {
  const std::int64_t q = state.range(0);
  const auto group = flatsum::CharacterGroup::make(flatsum::factorize(q));
  const auto chi = group->at(1);
  std::int64_t d = 1;
  const auto divisors = [&] {
    std::vector<std::int64_t> out;
    for (std::int64_t v = 1; v <= q; ++v)
      if (q % v == 0) out.push_back(v);
    return out;
  }();
  std::size_t pick = 0;
  for (auto _ : state) {
    d = divisors[pick];
    pick = (pick + 1) % divisors.size();
    auto result = flatsum::t_sum(chi, 1, 1, d, q);
    benchmark::DoNotOptimize(result.value);
  }
}

void bm_w_star_direct(benchmark::State& state) {
  const std::int64_t q = state.range(0);
  const auto chi = quadratic_character(q);
  for (auto _ : state) {
    auto value = flatsum::w_star_sum(chi, q / 2, q);
    benchmark::DoNotOptimize(value);
  }
}

void bm_w_star_fourier_grid(benchmark::State& state) {
  const std::int64_t q = state.range(0);
  const auto chi = quadratic_character(q);
  const std::vector<std::int64_t> cuts = {1, q / 4, q / 2, q};
  for (auto _ : state) {
    auto values = flatsum::fourier_w_star_grid(chi, cuts, q);
    benchmark::DoNotOptimize(values);
  }
}

BENCHMARK(bm_kloosterman)->Arg(101)->Arg(1009)->Arg(10007);
BENCHMARK(bm_t_sum)->Arg(360)->Arg(2520);
BENCHMARK(bm_w_star_direct)->Arg(101)->Arg(1009)->Arg(10007);
BENCHMARK(bm_w_star_fourier_grid)->Arg(101)->Arg(1009);

}  // namespace

BENCHMARK_MAIN();
