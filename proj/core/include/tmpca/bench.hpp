#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tmpca/matrix.hpp"

namespace tmpca {

/// One benchmark measurement. `p` is the branching factor for tmpca runs
/// and is recorded as n for full-sentence pca (its degenerate equivalent).
struct TimingRecord {
  std::string method;  // tmpca | pca | svm_raw | svm_reduced
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t p = 0;
  double wall_seconds = 0.0;
  double predicted_cost = 0.0;
  std::size_t repetitions = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const TimingRecord&, const TimingRecord&) = default;
};

struct BenchOptions {
  std::size_t repetitions = 3;
  std::uint64_t seed = 1;
  /// Refuse full-PCA configurations whose covariance would hold more than
  /// this many elements, i.e. (n*d)^2 > element_budget.
  double element_budget = 5e7;
  /// Timings at or below this are considered unmeasurable; 0 picks a
  /// default well above steady_clock resolution.
  double min_measurable_seconds = 0.0;
};

/// M sentences of shape N x D with independent standard-normal entries;
/// deterministic per seed.
std::vector<Matrix> synth_corpus(std::size_t m, std::size_t n, std::size_t d,
                                 std::uint64_t seed);

/// Median wall time of fitting `method` on a synthetic corpus: one warm-up
/// run is discarded, then `repetitions` (>= 3) timed runs. svm methods time
/// only the classifier fit (on raw flattened features or tmpca-reduced
/// ones); their reduction/fit setup is untimed.
TimingRecord time_fit(const std::string& method, std::size_t m, std::size_t n,
                      std::size_t d, std::size_t p, const BenchOptions& options);

/// Least-squares slope of log(y) against log(x). Requires >= 2 strictly
/// positive points and non-constant x.
double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y);

struct ScalingResult {
  std::vector<TimingRecord> records;  // tmpca records first, then pca
  double slope_tmpca = 0.0;
  double slope_pca = 0.0;
};

/// Times tmpca and full pca over an ascending grid of sentence lengths
/// (>= 3 powers of p) and fits the empirical growth exponents. Throws
/// NumericalError naming the offending configuration when any median falls
/// below the measurable-time floor.
ScalingResult scaling_experiment(const std::vector<std::size_t>& n_list,
                                 std::size_t d, std::size_t m, std::size_t p,
                                 const BenchOptions& options);

/// CSV with header method,m,n,d,p,wall_seconds,predicted_cost,repetitions,
/// seed; floats carry full precision so a read-back is exact.
void emit_csv(const std::vector<TimingRecord>& records, const std::string& path);
std::vector<TimingRecord> read_timings_csv(const std::string& path);

}  // namespace tmpca
