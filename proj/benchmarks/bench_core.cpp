#include <benchmark/benchmark.h>

#include <random>

#include "cubic/census.hpp"
#include "cubic/gf2_matrix.hpp"
#include "cubic/lattice.hpp"

using namespace cubic;

namespace {

Matrix<GaloisField> random_matrix(const GaloisField& f, std::size_t n, std::mt19937_64& rng) {
  Matrix<GaloisField> m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = f.random(rng);
  return m;
}

void BM_FieldMul(benchmark::State& state) {
  const auto f = GaloisField::extension(2, static_cast<std::uint32_t>(state.range(0)));
  std::mt19937_64 rng(1);
  std::vector<GfElement> xs(256);
  for (auto& x : xs) x = f.random(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.mul(xs[i & 255], xs[(i + 1) & 255]));
    ++i;
  }
}
BENCHMARK(BM_FieldMul)->Arg(8)->Arg(16);

void BM_FieldMulOddPrime(benchmark::State& state) {
  const auto f = GaloisField::extension(7, 16);
  std::mt19937_64 rng(2);
  std::vector<GfElement> xs(256);
  for (auto& x : xs) x = f.random(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.mul(xs[i & 255], xs[(i + 1) & 255]));
    ++i;
  }
}
BENCHMARK(BM_FieldMulOddPrime);

void BM_AssembleBlock(benchmark::State& state) {
  const auto f = GaloisField::extension(2, 8);
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto l = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(3);
  const auto brick = make_brick(random_matrix(f, d, rng));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_block(brick, LatticeSpec::cube(d, l)).matrix);
}
BENCHMARK(BM_AssembleBlock)->Args({2, 3})->Args({3, 2})->Args({3, 3})->Args({4, 2});

void BM_RankGeneric(benchmark::State& state) {
  const auto f = GaloisField::prime(2);
  std::mt19937_64 rng(4);
  const auto m = random_matrix(f, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankGeneric)->Arg(64)->Arg(256);

void BM_RankBitPacked(benchmark::State& state) {
  const auto f = GaloisField::prime(2);
  std::mt19937_64 rng(4);
  const auto m = Gf2Matrix::from_matrix(random_matrix(f, static_cast<std::size_t>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(gf2_rank(m));
}
BENCHMARK(BM_RankBitPacked)->Arg(64)->Arg(256);

void BM_CensusToric(benchmark::State& state) {
  const auto f = GaloisField::prime(2);
  std::mt19937_64 rng(5);
  const auto spec = LatticeSpec::cube(3, static_cast<std::size_t>(state.range(0)));
  const auto r = assemble_block(make_brick(random_matrix(f, 3, rng)), spec).matrix;
  const ThickProfile p(spec);
  const BoundaryConditions toric(3, Boundary::Periodic);
  for (auto _ : state) benchmark::DoNotOptimize(count_configs(r, p, toric));
}
BENCHMARK(BM_CensusToric)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
