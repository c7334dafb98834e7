#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tmpca::cli {

/// Everything a command needs, grouped by the config file's sections.
/// Defaults mirror the reference experiment (hash embeddings, D=64, N=64,
/// P=2) so a minimal config only names the dataset.
struct DatasetSection {
  std::string path;
  std::string positive_label = "spam";
  std::string negative_label = "ham";
  std::size_t dev_count = 0;
  std::size_t test_count = 0;

  friend bool operator==(const DatasetSection&, const DatasetSection&) = default;
};

struct PipelineSection {
  std::size_t sentence_len = 64;
  std::size_t embed_dim = 64;
  std::size_t branching = 2;
  std::vector<std::size_t> ngrams = {1};  // >1 entry = train-eval sweep
  std::string stopword_path;
  std::string vectors_path;  // empty -> deterministic hash embeddings
  bool lowercase = true;

  friend bool operator==(const PipelineSection&, const PipelineSection&) = default;
};

struct SvmSection {
  bool auto_lambda = true;  // pick lambda on the dev split over a fixed grid
  double lambda = 1e-4;     // used when auto_lambda is false
  std::size_t epochs = 50;

  friend bool operator==(const SvmSection&, const SvmSection&) = default;
};

struct RunSection {
  std::vector<std::string> methods = {"tmpca", "pca", "raw"};
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  bool feature_labels = false;  // leading label column in features.csv
  std::string model_path;       // transform input; empty -> out_dir/model.json

  friend bool operator==(const RunSection&, const RunSection&) = default;
};

struct BenchSection {
  std::size_t m = 2000;
  std::size_t d = 8;
  std::vector<std::size_t> n_list = {16, 32, 64, 128};
  std::size_t p = 2;
  std::size_t repetitions = 3;
  double element_budget = 5e7;
  bool plot_data = false;

  friend bool operator==(const BenchSection&, const BenchSection&) = default;
};

struct RunConfig {
  DatasetSection dataset;
  PipelineSection pipeline;
  SvmSection svm;
  RunSection run;
  BenchSection bench;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// The fixed regularization grid searched on the dev split when
/// svm.lambda = auto.
inline constexpr double kLambdaGrid[] = {1e-2, 1e-3, 1e-4};

/// Parses the flat key-value format:
///   [section]
///   key = value        # comment
/// Unknown sections or keys, malformed lines, and unparseable values all
/// throw ConfigError naming the line. Values accumulate on top of defaults.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig parse_config_file(const std::string& path, RunConfig base = {});

/// Canonical serialization; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Splits "1,2,4" into values; throws ConfigError on empties or non-numbers.
std::vector<std::size_t> parse_size_list(const std::string& text,
                                         const std::string& what);

/// Validates and expands a method spec: "all" -> tmpca,pca,raw; otherwise a
/// comma list drawn from those three. Throws ConfigError on anything else.
std::vector<std::string> parse_method_list(const std::string& text);

}  // namespace tmpca::cli
