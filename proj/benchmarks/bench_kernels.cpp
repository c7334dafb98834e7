// Microbenchmarks for the hot kernels: covariance accumulation, the Jacobi
// eigensolver, tree and full-width reductions, classifier training, and the
// text pipeline. Run with --benchmark_filter=<regex> to narrow.
#include <benchmark/benchmark.h>

#include <cstddef>
#include <string>
#include <vector>

#include "tmpca/bench.hpp"
#include "tmpca/embedding.hpp"
#include "tmpca/matrix.hpp"
#include "tmpca/pca.hpp"
#include "tmpca/svm.hpp"
#include "tmpca/text.hpp"
#include "tmpca/tree.hpp"

namespace {

using tmpca::Matrix;

Matrix random_samples(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  const std::vector<Matrix> corpus = tmpca::synth_corpus(rows, 1, cols, seed);
  return tmpca::build_level_matrix(corpus, 1);
}

void BM_CovarianceMatrix(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const Matrix samples = random_samples(256, dim, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tmpca::covariance_matrix(samples));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CovarianceMatrix)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_JacobiEigen(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const Matrix cov = tmpca::covariance_matrix(random_samples(256, dim, 12)).cov;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tmpca::symmetric_eigendecomposition(cov));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JacobiEigen)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_PcaFit(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const Matrix samples = random_samples(256, dim, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tmpca::pca_fit(samples, dim / 2));
  }
}
BENCHMARK(BM_PcaFit)->RangeMultiplier(2)->Range(8, 64);

void BM_TmpcaFit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::vector<Matrix> corpus = tmpca::synth_corpus(128, n, 4, 14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tmpca::tmpca_fit(corpus, 2));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TmpcaFit)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_TmpcaApplyBatch(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::vector<Matrix> corpus = tmpca::synth_corpus(128, n, 4, 15);
  const tmpca::TmpcaModel model = tmpca::tmpca_fit(corpus, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tmpca::tmpca_apply_batch(model, corpus));
  }
}
BENCHMARK(BM_TmpcaApplyBatch)->RangeMultiplier(2)->Range(8, 64);

void BM_SvmFit(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const Matrix features = random_samples(512, dim, 16);
  std::vector<int> labels(512);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 2 ? 1 : -1;
  tmpca::SvmFitOptions options;
  options.epochs = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tmpca::svm_fit(features, labels, options));
  }
}
BENCHMARK(BM_SvmFit)->RangeMultiplier(4)->Range(16, 256);

void BM_HashEmbedToken(benchmark::State& state) {
  const tmpca::Embedder embedder = tmpca::Embedder::hashing(64, 7);
  std::vector<double> out(64);
  std::size_t i = 0;
  for (auto _ : state) {
    embedder.embed_token("token" + std::to_string(i++ % 977), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_HashEmbedToken);

void BM_PipelineNumericalize(benchmark::State& state) {
  tmpca::PipelineConfig config;
  config.sentence_len = 64;
  config.embed_dim = 64;
  config.branching = 2;
  const tmpca::TextPipeline pipeline(config, tmpca::Embedder::hashing(64, 8));
  const std::string text =
      "Congratulations you have won a free prize draw entry call now to "
      "claim your reward before the offer expires tonight";
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline.numericalize(text));
  }
}
BENCHMARK(BM_PipelineNumericalize);

}  // namespace

BENCHMARK_MAIN();
