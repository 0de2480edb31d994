#include <benchmark/benchmark.h>

#include <random>

#include "cachecast/ecc.hpp"
#include "cachecast/indexcoding.hpp"

using namespace cachecast;

namespace {

gf2::BitMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  gf2::BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() & 1);
  return m;
}

struct Setup {
  caching::CachingConfig cfg;
  std::vector<gf2::BitVec> files;
  caching::Prefetching pf;
};

Setup make_setup(int num_files, int num_users, long long m_num) {
  auto cfg = caching::make_config(num_files, num_users, Rational(m_num), 8);
  auto files = caching::generate_files(cfg, 1);
  auto pf = caching::Prefetching::symmetric_batch(cfg, files);
  return {cfg, files, pf};
}

void BM_rank(benchmark::State& state) {
  std::mt19937 rng(1);
  auto m = random_matrix(rng, state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gf2::rank(m));
}
BENCHMARK(BM_rank)->Arg(16)->Arg(64)->Arg(256);

void BM_find_optimal_code_no_table(benchmark::State& state) {
  for (auto _ : state) {
    codes::LinearCode code =
        codes::find_optimal_code(state.range(0), state.range(1), {.use_table = false});
    benchmark::DoNotOptimize(code.length());
  }
}
BENCHMARK(BM_find_optimal_code_no_table)->Args({5, 3})->Args({6, 3})->Args({4, 5});

void BM_syndrome_decode(benchmark::State& state) {
  codes::LinearCode code = codes::find_optimal_code(6, 3);
  codes::SyndromeDecoder dec = codes::build_decoder(code);
  gf2::BitVec received = code.encode(gf2::BitVec::from_mask(0b101001, 6));
  received.flip(3);
  for (auto _ : state) benchmark::DoNotOptimize(dec.decode(received).reliable);
}
BENCHMARK(BM_syndrome_decode);

void BM_alpha_brute(benchmark::State& state) {
  auto s = make_setup(4, 4, 1);
  auto instance = indexcoding::induce(s.cfg, s.pf, {1, 2, 3, 4});
  for (auto _ : state) benchmark::DoNotOptimize(indexcoding::alpha_brute(instance, 16));
}
BENCHMARK(BM_alpha_brute);

void BM_min_rank_brute(benchmark::State& state) {
  auto s = make_setup(3, 3, 1);
  auto instance = indexcoding::induce(s.cfg, s.pf, {1, 2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(indexcoding::min_rank_brute(instance, 24, 0));
}
BENCHMARK(BM_min_rank_brute);

void BM_average_rate(benchmark::State& state) {
  auto cfg = caching::make_config(4, 4, Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(ecc::average_rate(cfg, 1).to_double());
}
BENCHMARK(BM_average_rate);

void BM_adversarial_sweep(benchmark::State& state) {
  auto s = make_setup(3, 3, 1);
  auto scheme = ecc::build_scheme(s.cfg, s.pf, {1, 2, 3}, 1);
  for (auto _ : state) {
    auto sweep = ecc::adversarial_sweep(scheme, s.pf, s.files, 1);
    benchmark::DoNotOptimize(sweep.failures);
  }
}
BENCHMARK(BM_adversarial_sweep);

void BM_user_decode(benchmark::State& state) {
  auto s = make_setup(4, 4, 1);
  auto result = delivery::yma_transmissions(s.cfg, s.pf, {1, 2, 3, 4});
  for (auto _ : state) {
    auto file = delivery::user_decode_linear(s.cfg, s.pf, {1, 2, 3, 4}, 2, result.code,
                                             result.transmissions.symbols);
    benchmark::DoNotOptimize(file.size());
  }
}
BENCHMARK(BM_user_decode);

}  // namespace

BENCHMARK_MAIN();
