#include <benchmark/benchmark.h>

#include <random>

#include "iwk/ecq.hpp"
#include "iwk/lambda.hpp"
#include "iwk/polynomial.hpp"
#include "iwk/zpmod.hpp"

using namespace iwk;

namespace {

Presentation random_presentation(std::int64_t p, unsigned N, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Presentation P(p, N, n, n);
  std::int64_t q = 1;
  for (unsigned k = 0; k < N; ++k) q *= p;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) P.set(r, c, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q)));
  }
  return P;
}

void BM_SmithNormalForm(benchmark::State& state) {
  const auto P = random_presentation(5, 20, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(P));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(16)->Arg(64);

void BM_PhiBruteforce(benchmark::State& state) {
  const FgZpModule M(3, 0, {4, 3, 2, 2});
  const auto i = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phi_bruteforce(M, i, Enumeration::OrbitReduced));
}
BENCHMARK(BM_PhiBruteforce)->Arg(0)->Arg(1)->Arg(2);

void BM_CountPoints(benchmark::State& state) {
  const EllipticCurve E(0, 0, 1, -7, 6);
  const std::int64_t ell = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(count_points_ap(E, ell));
}
BENCHMARK(BM_CountPoints)->Arg(101)->Arg(1009)->Arg(9973);

void BM_CoinvariantOrder(benchmark::State& state) {
  const ElementaryLambdaModule M{3, 0, {{DistinguishedPoly::from_poly(3, parse_polynomial("T^2+3*T+3")), 1}}};
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(coinvariant_order(M, n, n));
}
BENCHMARK(BM_CoinvariantOrder)->DenseRange(2, 5);

void BM_WeierstrassPrepare(benchmark::State& state) {
  const auto D = static_cast<unsigned>(state.range(0));
  const auto s = TruncatedSeries::from_poly(5, 10, D, parse_polynomial("25*T^3+5*T^2+5*T+10+T^4+7*T^5"));
  for (auto _ : state) benchmark::DoNotOptimize(weierstrass_prepare(s));
}
BENCHMARK(BM_WeierstrassPrepare)->Arg(12)->Arg(48);

}  // namespace
BENCHMARK_MAIN();
