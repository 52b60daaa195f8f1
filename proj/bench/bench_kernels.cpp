// Serial references against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "svgx/corpus_io.hpp"
#include "svgx/embed.hpp"
#include "svgx/normalizer.hpp"
#include "svgx/render.hpp"
#include "svgx/stats.hpp"

using namespace svgx;

namespace {

const std::vector<RawSvg>& corpus() {
  static const auto raws = [] {
    std::vector<RawSvg> out;
    for (const auto& p : discover_files({SVGX_FIXTURES}, ".svg")) out.push_back({read_text_file(p), p.string()});
    return out;
  }();
  return raws;
}

const std::vector<StatsInput>& stats_inputs() {
  static const auto in = [] {
    std::vector<StatsInput> out;
    for (const auto& r : corpus()) out.push_back({r, "a small caption", "a longer description of the picture"});
    return out;
  }();
  return in;
}

std::pair<RgbImage, RgbImage> images(int size) {
  std::mt19937 rng(1);
  RgbImage a{size, size, std::vector<std::uint8_t>(static_cast<std::size_t>(size) * size * 3)}, b = a;
  for (auto& v : a.rgb) v = static_cast<std::uint8_t>(rng());
  for (auto& v : b.rgb) v = static_cast<std::uint8_t>(rng());
  return {a, b};
}

std::pair<EmbeddingMatrix, std::vector<DescriptionIds>> embedding(std::uint32_t rows, std::uint32_t cols) {
  std::mt19937 rng(2);
  EmbeddingMatrix m{rows, cols, std::vector<float>(static_cast<std::size_t>(rows) * cols)};
  for (auto& v : m.data) v = std::uniform_real_distribution<float>(-1, 1)(rng);
  std::vector<DescriptionIds> descs;
  for (int t = 0; t < 55; ++t) {
    DescriptionIds d{t, {}};
    for (int k = 0; k < 8; ++k) d.ids.push_back(static_cast<std::uint32_t>(rng() % rows));
    descs.push_back(std::move(d));
  }
  return {m, descs};
}

void BM_diff_serial(benchmark::State& s) {
  const auto [a, b] = images(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(diff_images_serial(a, b));
}
void BM_diff_parallel(benchmark::State& s) {
  const auto [a, b] = images(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(diff_images(a, b));
}

void BM_extend_serial(benchmark::State& s) {
  const auto [m, d] = embedding(32000, static_cast<std::uint32_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(extend_matrix_serial(m, d));
}
void BM_extend_parallel(benchmark::State& s) {
  const auto [m, d] = embedding(32000, static_cast<std::uint32_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(extend_matrix(m, d));
}

void BM_normalize_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(normalize_corpus_serial(corpus()));
}
void BM_normalize_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(normalize_corpus(corpus()));
}

void BM_stats_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(corpus_stats_serial(stats_inputs()));
}
void BM_stats_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(corpus_stats(stats_inputs()));
}

}  // namespace

BENCHMARK(BM_diff_serial)->Arg(512)->Arg(2048);
BENCHMARK(BM_diff_parallel)->Arg(512)->Arg(2048);
BENCHMARK(BM_extend_serial)->Arg(1024)->Arg(4096);
BENCHMARK(BM_extend_parallel)->Arg(1024)->Arg(4096);
BENCHMARK(BM_normalize_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_normalize_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stats_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stats_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
