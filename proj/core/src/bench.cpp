#include "tmpca/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string_view>

#include "tmpca/errors.hpp"
#include "tmpca/pca.hpp"
#include "tmpca/rng.hpp"
#include "tmpca/svm.hpp"
#include "tmpca/tree.hpp"

namespace tmpca {
namespace {

constexpr double kDefaultMinMeasurableSeconds = 1e-7;
constexpr std::size_t kBenchSvmEpochs = 50;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

/// Runs `body` once untimed, then `repetitions` timed passes; returns the
/// median. A sink value defeats dead-code elimination of the fits.
double median_wall_seconds(const std::function<double()>& body,
                           std::size_t repetitions) {
  volatile double sink = body();  // warm-up, discarded
  std::vector<double> times(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    const double start = now_seconds();
    sink = body();
    times[r] = now_seconds() - start;
  }
  (void)sink;
  std::sort(times.begin(), times.end());
  const std::size_t mid = repetitions / 2;
  if (repetitions % 2 == 1) return times[mid];
  return 0.5 * (times[mid - 1] + times[mid]);
}

Matrix flatten_sentences(const std::vector<Matrix>& sentences) {
  const std::size_t m = sentences.size();
  const std::size_t width = sentences.empty() ? 0 : sentences[0].storage().size();
  Matrix flat(m, width);
  double* dst = flat.storage().data();
  for (const Matrix& s : sentences) {
    dst = std::copy(s.storage().begin(), s.storage().end(), dst);
  }
  return flat;
}

/// Alternating +1/-1 labels guarantee both classes for any m >= 2.
std::vector<int> synth_labels(std::size_t m) {
  std::vector<int> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = (i % 2 == 0) ? 1 : -1;
  return labels;
}

}  // namespace

std::vector<Matrix> synth_corpus(std::size_t m, std::size_t n, std::size_t d,
                                 std::uint64_t seed) {
  if (n == 0 || d == 0) {
    throw InvalidArgumentError("synth_corpus: n and d must be positive");
  }
  SplitMix64 rng(seed);
  std::vector<Matrix> sentences;
  sentences.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Matrix s(n, d);
    for (double& v : s.storage()) v = rng.normal();
    sentences.push_back(std::move(s));
  }
  return sentences;
}

TimingRecord time_fit(const std::string& method, std::size_t m, std::size_t n,
                      std::size_t d, std::size_t p,
                      const BenchOptions& options) {
  if (options.repetitions < 3) {
    throw InvalidArgumentError(
        "time_fit: need at least 3 repetitions for a stable median, got " +
        std::to_string(options.repetitions));
  }
  if (m == 0) {
    throw InvalidArgumentError("time_fit: need at least one sentence");
  }

  TimingRecord record;
  record.method = method;
  record.m = m;
  record.n = n;
  record.d = d;
  record.repetitions = options.repetitions;
  record.seed = options.seed;

  const bool needs_full_covariance = method == "pca";
  if (needs_full_covariance) {
    const double nd = static_cast<double>(n) * static_cast<double>(d);
    if (nd * nd > options.element_budget) {
      throw InvalidArgumentError(
          "time_fit: full PCA at n=" + std::to_string(n) + ", d=" +
          std::to_string(d) + " needs a covariance of " +
          std::to_string(nd * nd) + " elements, over the budget of " +
          std::to_string(options.element_budget) +
          "; lower n*d or raise the element budget");
    }
  }

  const std::vector<Matrix> corpus = synth_corpus(m, n, d, options.seed);

  std::function<double()> body;
  if (method == "tmpca") {
    record.p = p;
    record.predicted_cost = tmpca_cost(n, d, m, p);
    body = [&corpus, p]() {
      TmpcaModel model = tmpca_fit(corpus, p);
      return model.levels.empty() ? 0.0 : model.levels[0].mean[0];
    };
  } else if (method == "pca") {
    record.p = n;  // full-sentence PCA is the p = n degenerate case
    record.predicted_cost = pca_cost(n, d, m);
    Matrix flat = flatten_sentences(corpus);
    body = [flat = std::move(flat), d]() {
      PcaTransform t = pca_fit(flat, d);
      return t.mean[0];
    };
  } else if (method == "svm_raw" || method == "svm_reduced") {
    Matrix features;
    if (method == "svm_raw") {
      record.p = p;
      features = flatten_sentences(corpus);
      record.predicted_cost = static_cast<double>(kBenchSvmEpochs) *
                              static_cast<double>(m) * static_cast<double>(n) *
                              static_cast<double>(d);
    } else {
      record.p = p;
      const TmpcaModel model = tmpca_fit(corpus, p);  // setup, untimed
      features = tmpca_apply_batch(model, corpus);
      record.predicted_cost = static_cast<double>(kBenchSvmEpochs) *
                              static_cast<double>(m) * static_cast<double>(d);
    }
    const std::vector<int> labels = synth_labels(m);
    SvmFitOptions svm_options;
    svm_options.epochs = kBenchSvmEpochs;
    svm_options.seed = options.seed;
    body = [features = std::move(features), labels = std::move(labels),
            svm_options]() {
      SvmModel model = svm_fit(features, labels, svm_options);
      return model.bias;
    };
  } else {
    throw InvalidArgumentError(
        "time_fit: unknown method '" + method +
        "' (expected tmpca, pca, svm_raw or svm_reduced)");
  }

  record.wall_seconds = median_wall_seconds(body, options.repetitions);
  return record;
}

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw InvalidArgumentError("fit_loglog_slope: size mismatch");
  }
  if (x.size() < 2) {
    throw InvalidArgumentError("fit_loglog_slope: need at least 2 points");
  }
  const std::size_t k = x.size();
  std::vector<double> lx(k);
  std::vector<double> ly(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw InvalidArgumentError(
          "fit_loglog_slope: points must be strictly positive");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mean_x += lx[i];
    mean_y += ly[i];
  }
  mean_x /= static_cast<double>(k);
  mean_y /= static_cast<double>(k);

  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    numerator += (lx[i] - mean_x) * (ly[i] - mean_y);
    denominator += (lx[i] - mean_x) * (lx[i] - mean_x);
  }
  if (denominator == 0.0) {
    throw InvalidArgumentError("fit_loglog_slope: x values are all equal");
  }
  return numerator / denominator;
}

ScalingResult scaling_experiment(const std::vector<std::size_t>& n_list,
                                 std::size_t d, std::size_t m, std::size_t p,
                                 const BenchOptions& options) {
  if (n_list.size() < 3) {
    throw InvalidArgumentError(
        "scaling_experiment: need at least 3 sentence lengths");
  }
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
    if (n_list[i] >= n_list[i + 1]) {
      throw InvalidArgumentError(
          "scaling_experiment: sentence lengths must be strictly ascending");
    }
  }

  const double floor = options.min_measurable_seconds > 0.0
                           ? options.min_measurable_seconds
                           : kDefaultMinMeasurableSeconds;

  ScalingResult result;
  std::vector<double> sizes;
  std::vector<double> tmpca_times;
  std::vector<double> pca_times;
  for (const char* method : {"tmpca", "pca"}) {
    for (std::size_t n : n_list) {
      TimingRecord record = time_fit(method, m, n, d, p, options);
      if (record.wall_seconds <= floor) {
        throw NumericalError(
            "scaling_experiment: " + std::string(method) + " at n=" +
            std::to_string(n) + " measured " +
            std::to_string(record.wall_seconds) +
            " s, at or below the measurable floor of " + std::to_string(floor) +
            " s; increase m or repetitions");
      }
      (std::string_view(method) == "tmpca" ? tmpca_times : pca_times)
          .push_back(record.wall_seconds);
      result.records.push_back(std::move(record));
    }
  }
  sizes.reserve(n_list.size());
  for (std::size_t n : n_list) sizes.push_back(static_cast<double>(n));

  result.slope_tmpca = fit_loglog_slope(sizes, tmpca_times);
  result.slope_pca = fit_loglog_slope(sizes, pca_times);
  return result;
}

void emit_csv(const std::vector<TimingRecord>& records,
              const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("emit_csv: cannot open '" + path + "' for writing");
  }
  out << "method,m,n,d,p,wall_seconds,predicted_cost,repetitions,seed\n";
  char buffer[64];
  for (const TimingRecord& r : records) {
    out << r.method << ',' << r.m << ',' << r.n << ',' << r.d << ',' << r.p
        << ',';
    std::snprintf(buffer, sizeof buffer, "%.17g", r.wall_seconds);
    out << buffer << ',';
    std::snprintf(buffer, sizeof buffer, "%.17g", r.predicted_cost);
    out << buffer << ',' << r.repetitions << ',' << r.seed << '\n';
  }
  if (!out.flush()) {
    throw IoError("emit_csv: write to '" + path + "' failed");
  }
}

std::vector<TimingRecord> read_timings_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("read_timings_csv: cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw IngestError("read_timings_csv: " + path + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "method,m,n,d,p,wall_seconds,predicted_cost,repetitions,seed") {
    throw IngestError("read_timings_csv: " + path + ": unexpected header '" +
                      line + "'");
  }

  std::vector<TimingRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 9) {
      throw IngestError("read_timings_csv: " + path + " line " +
                        std::to_string(line_no) + ": expected 9 fields, got " +
                        std::to_string(fields.size()));
    }
    try {
      TimingRecord r;
      r.method = fields[0];
      r.m = std::stoull(fields[1]);
      r.n = std::stoull(fields[2]);
      r.d = std::stoull(fields[3]);
      r.p = std::stoull(fields[4]);
      r.wall_seconds = std::stod(fields[5]);
      r.predicted_cost = std::stod(fields[6]);
      r.repetitions = std::stoull(fields[7]);
      r.seed = std::stoull(fields[8]);
      records.push_back(std::move(r));
    } catch (const std::exception&) {
      throw IngestError("read_timings_csv: " + path + " line " +
                        std::to_string(line_no) + ": unparseable field");
    }
  }
  return records;
}

}  // namespace tmpca
