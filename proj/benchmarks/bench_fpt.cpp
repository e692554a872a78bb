#include <benchmark/benchmark.h>

#include "fpt/estimator.hpp"
#include "fpt/frobenius.hpp"
#include "fpt/harness.hpp"
#include "fpt/monomial.hpp"
#include "fpt/parse.hpp"

using namespace fpt;

namespace {

IdealPair quotient_pair(std::uint32_t p) {
  const auto ring = suite_ring(p, 3);
  std::vector<SparsePoly> gens = {parse_poly("X", ring), parse_poly("Y", ring),
                                  parse_poly("Z", ring)};
  return IdealPair(std::move(gens), parse_poly("X^2+Y^3+Z^5", ring));
}

MonomialIdeal dense_ideal() {
  Rng rng(9);
  return random_monomial_ideal(rng, 3, 9, 14, /*ensure_primary=*/true);
}

}  // namespace

static void BM_pow_reduced(benchmark::State& state) {
  const auto ring = suite_ring(13, 2);
  const auto f = parse_poly("X^2+Y^3", ring);
  const auto lvl = BracketLevel::make(PrimeChar(13), static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pow_reduced(f, lvl.q - 1, lvl));
  }
}
BENCHMARK(BM_pow_reduced)->Arg(1)->Arg(2);

static void BM_nu_level_quotient(benchmark::State& state) {
  const auto pair = quotient_pair(7);
  const auto lvl = BracketLevel::make(PrimeChar(7), static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nu_level(pair, lvl));
  }
}
BENCHMARK(BM_nu_level_quotient)->Arg(2)->Arg(3);

static void BM_nu_level_principal(benchmark::State& state) {
  const auto ring = suite_ring(13, 2);
  const IdealPair pair({parse_poly("X^3+Y^4", ring)});
  const auto lvl = BracketLevel::make(PrimeChar(13), static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nu_level(pair, lvl));
  }
}
BENCHMARK(BM_nu_level_principal)->Arg(1)->Arg(2);

static void BM_oracle_nu(benchmark::State& state) {
  const auto ring = suite_ring(3, 2);
  Rng rng(4);
  const auto pair = random_pair(rng, Profile::sparse_poly, ring, 3, 2);
  const auto lvl = BracketLevel::make(PrimeChar(3), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_nu(pair, lvl));
  }
}
BENCHMARK(BM_oracle_nu);

static void BM_fpt_lp(benchmark::State& state) {
  const auto a = dense_ideal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpt_lp(a));
  }
}
BENCHMARK(BM_fpt_lp);

static void BM_integral_closure(benchmark::State& state) {
  const auto a = dense_ideal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(integral_closure(a));
  }
}
BENCHMARK(BM_integral_closure);

static void BM_multiplicity(benchmark::State& state) {
  const auto a = dense_ideal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiplicity(a));
  }
}
BENCHMARK(BM_multiplicity);

static void BM_suite_threshold_edge(benchmark::State& state) {
  SuiteSpec spec;
  spec.suite = Suite::threshold_edge;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_suite(spec));
  }
}
BENCHMARK(BM_suite_threshold_edge);

BENCHMARK_MAIN();
