#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <utility>

#include "tmpca/bench.hpp"
#include "tmpca/dataset.hpp"
#include "tmpca/embedding.hpp"
#include "tmpca/errors.hpp"
#include "tmpca/model_io.hpp"
#include "tmpca/pca.hpp"
#include "tmpca/svm.hpp"
#include "tmpca/text.hpp"
#include "tmpca/tree.hpp"

namespace tmpca::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

/// Tracks the files a command writes so a failure can undo them, and
/// checks every write by reading it back.
class OutputTracker {
 public:
  explicit OutputTracker(std::string out_dir) : dir_(std::move(out_dir)) {}

  void prepare() {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw ConfigError("cannot create output directory '" + dir_ + "'");
    }
  }

  std::string path(const std::string& name) const {
    return (fs::path(dir_) / name).string();
  }

  void write(const std::string& name, const std::string& content) {
    const std::string p = path(name);
    write_text_file(p, content);
    written_.push_back(p);
    if (read_text_file(p) != content) {
      throw IoError("output validation failed: '" + p +
                    "' does not read back intact");
    }
  }

  /// For files produced by a writer that owns its own format (timings CSV):
  /// records the path so cleanup covers it; the caller validates content.
  void note(const std::string& name) { written_.push_back(path(name)); }

  void remove_all() noexcept {
    for (const std::string& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    written_.clear();
  }

 private:
  std::string dir_;
  std::vector<std::string> written_;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw ConfigError(why);
}

void validate_common(const RunConfig& config) {
  require(config.run.threads >= 1, "run.threads must be at least 1");
  require(!config.run.methods.empty(), "run.method must name at least one method");
  require(!config.pipeline.ngrams.empty(), "pipeline.ngram must have at least one value");
}

std::string single_method(const RunConfig& config, const std::string& command,
                          bool allow_raw) {
  require(config.run.methods.size() == 1,
          command + " takes a single --method (tmpca, pca" +
              (allow_raw ? ", or raw)" : ")"));
  const std::string& method = config.run.methods.front();
  if (method == "raw" && !allow_raw) {
    throw ConfigError(command + " has no model to fit for method 'raw'");
  }
  return method;
}

std::size_t single_ngram(const RunConfig& config, const std::string& command) {
  require(config.pipeline.ngrams.size() == 1,
          command + " takes a single --ngram value");
  return config.pipeline.ngrams.front();
}

Embedder make_embedder(const RunConfig& config) {
  if (config.pipeline.vectors_path.empty()) {
    return Embedder::hashing(config.pipeline.embed_dim, config.run.seed);
  }
  return Embedder::table(load_embedding_table(config.pipeline.vectors_path));
}

TextPipeline make_pipeline(const RunConfig& config) {
  PipelineConfig pc;
  pc.sentence_len = config.pipeline.sentence_len;
  pc.embed_dim = config.pipeline.embed_dim;
  pc.branching = config.pipeline.branching;
  pc.ngram = config.pipeline.ngrams.front();
  pc.stopword_path = config.pipeline.stopword_path;
  pc.lowercase = config.pipeline.lowercase;
  return TextPipeline(std::move(pc), make_embedder(config));
}

LabeledDataset load_dataset(const RunConfig& config) {
  require(!config.dataset.path.empty(), "dataset.path is required");
  LabeledDataset dataset = ingest_tsv(
      config.dataset.path, {{config.dataset.positive_label, +1},
                            {config.dataset.negative_label, -1}});
  assign_splits_shuffled(dataset, config.dataset.dev_count,
                         config.dataset.test_count, config.run.seed);
  return dataset;
}

struct SplitData {
  std::vector<Matrix> sentences;
  std::vector<int> labels;
};

SplitData numericalize_split(const LabeledDataset& dataset, Split split,
                             const TextPipeline& pipeline, std::size_t ngram) {
  SplitData out;
  for (std::size_t idx : dataset.split_indices(split)) {
    out.sentences.push_back(pipeline.numericalize(dataset.records[idx].text, ngram));
    out.labels.push_back(dataset.records[idx].label);
  }
  return out;
}

/// m x (n*d) row-major flattening of equal-shape sentences.
Matrix flatten_sentences(const std::vector<Matrix>& sentences) {
  if (sentences.empty()) throw InvalidInputError("no sentences to flatten");
  return build_level_matrix(sentences, sentences.front().rows());
}

struct ReportRow {
  std::string method;
  std::string dataset;
  std::string split;
  double error_rate = 0.0;
  double train_seconds = 0.0;
};

std::string format_report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "method,dataset,split,error_rate,train_seconds\n";
  for (const ReportRow& row : rows) {
    out += row.method + ',' + row.dataset + ',' + row.split + ',' +
           format_double(row.error_rate) + ',' +
           format_double(row.train_seconds) + '\n';
  }
  return out;
}

/// Picks lambda on the dev split over the fixed grid (ties keep the first,
/// i.e. strongest, candidate), then returns the grid winner. With a fixed
/// lambda it is returned unchanged.
double choose_lambda(const RunConfig& config, const Matrix& train_features,
                     const std::vector<int>& train_labels,
                     const SplitData& dev, const Matrix& dev_features) {
  if (!config.svm.auto_lambda) return config.svm.lambda;
  require(!dev.labels.empty(),
          "svm.lambda = auto needs a dev split (set dataset.dev_count)");
  double best_lambda = kLambdaGrid[0];
  double best_error = 2.0;
  for (double lambda : kLambdaGrid) {
    SvmFitOptions options{lambda, config.svm.epochs, config.run.seed};
    const SvmModel candidate = svm_fit(train_features, train_labels, options);
    const double err = error_rate(candidate, dev_features, dev.labels);
    if (err < best_error) {
      best_error = err;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

int guarded(OutputTracker& out, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& e) {
    out.remove_all();
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace

std::string dataset_stem(const std::string& path) {
  const std::string stem = fs::path(path).stem().string();
  return stem.empty() ? "dataset" : stem;
}

std::string method_label(const std::string& method, std::size_t ngram,
                         bool sweeping) {
  if (!sweeping) return method;
  return method + "-n" + std::to_string(ngram);
}

std::string format_features_csv(const Matrix& features,
                                const std::vector<int>* labels) {
  if (labels != nullptr && labels->size() != features.rows()) {
    throw ShapeError("features/labels row count mismatch: " +
                     std::to_string(features.rows()) + " vs " +
                     std::to_string(labels->size()));
  }
  std::string out;
  for (std::size_t r = 0; r < features.rows(); ++r) {
    if (labels != nullptr) {
      out += std::to_string((*labels)[r]);
      if (features.cols() > 0) out += ',';
    }
    for (std::size_t c = 0; c < features.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_double(features(r, c));
    }
    out += '\n';
  }
  return out;
}

int cmd_fit(const RunConfig& config) {
  OutputTracker out(config.run.out_dir);
  return guarded(out, [&] {
    validate_common(config);
    const std::string method = single_method(config, "fit", /*allow_raw=*/false);
    const std::size_t ngram = single_ngram(config, "fit");

    const LabeledDataset dataset = load_dataset(config);
    const TextPipeline pipeline = make_pipeline(config);
    SplitData train = numericalize_split(dataset, Split::train, pipeline, ngram);
    if (train.sentences.empty()) {
      throw InvalidInputError("the train split is empty; nothing to fit");
    }
    const std::size_t m = train.sentences.size();
    const std::size_t n = pipeline.effective_len();
    const std::size_t d = config.pipeline.embed_dim;
    const std::size_t p = config.pipeline.branching;

    out.prepare();
    std::string model_json;
    double predicted = 0.0;
    const Clock::time_point start = Clock::now();
    if (method == "tmpca") {
      const TmpcaModel model = tmpca_fit(train.sentences, p);
      model_json = to_json(model);
      predicted = tmpca_cost(n, d, m, p);
    } else {
      const Matrix flat = flatten_sentences(train.sentences);
      const PcaTransform model = pca_fit(flat, d);
      model_json = to_json(model);
      predicted = pca_cost(n, d, m);
    }
    const double wall = seconds_since(start);

    out.write("model.json", model_json);
    out.write("effective-config.txt", serialize_config(config));
    std::printf("fit method=%s m=%zu n=%zu d=%zu p=%zu\n", method.c_str(), m,
                n, d, method == "pca" ? n : p);
    std::printf("fit wall_seconds=%s predicted_cost=%s\n",
                format_double(wall).c_str(), format_double(predicted).c_str());
    std::printf("wrote %s\n", out.path("model.json").c_str());
  });
}

int cmd_transform(const RunConfig& config) {
  OutputTracker out(config.run.out_dir);
  return guarded(out, [&] {
    validate_common(config);
    const std::string method = single_method(config, "transform", /*allow_raw=*/true);
    const std::size_t ngram = single_ngram(config, "transform");

    const LabeledDataset dataset = load_dataset(config);
    const TextPipeline pipeline = make_pipeline(config);
    const std::size_t n = pipeline.effective_len();
    const std::size_t d = config.pipeline.embed_dim;

    std::vector<Matrix> sentences;
    std::vector<int> labels;
    sentences.reserve(dataset.size());
    for (const Record& record : dataset.records) {
      sentences.push_back(pipeline.numericalize(record.text, ngram));
      labels.push_back(record.label);
    }
    if (sentences.empty()) {
      throw InvalidInputError("the dataset has no records to transform");
    }

    Matrix features;
    if (method == "raw") {
      features = flatten_sentences(sentences);
    } else {
      const std::string model_path = config.run.model_path.empty()
                                         ? out.path("model.json")
                                         : config.run.model_path;
      const std::string text = read_text_file(model_path);
      const ModelKind kind = sniff_model_kind(text);
      if (method == "tmpca") {
        if (kind != ModelKind::tmpca_model) {
          throw ConfigError("method is tmpca but '" + model_path +
                            "' does not hold a tmpca cascade");
        }
        const TmpcaModel model = tmpca_model_from_json(text);
        if (model.n != n || model.d != d) {
          throw ShapeError(
              "model expects sentences of shape " + std::to_string(model.n) +
              "x" + std::to_string(model.d) + " but the pipeline produces " +
              std::to_string(n) + "x" + std::to_string(d));
        }
        features = tmpca_apply_batch(model, sentences);
      } else {
        if (kind != ModelKind::pca_transform) {
          throw ConfigError("method is pca but '" + model_path +
                            "' does not hold a pca transform");
        }
        const PcaTransform model = pca_transform_from_json(text);
        if (model.in_dim != n * d) {
          throw ShapeError("model expects flattened vectors of length " +
                           std::to_string(model.in_dim) +
                           " but the pipeline produces " +
                           std::to_string(n * d));
        }
        features = pca_apply_batch(model, flatten_sentences(sentences));
      }
    }

    out.prepare();
    const std::vector<int>* label_column =
        config.run.feature_labels ? &labels : nullptr;
    out.write("features.csv", format_features_csv(features, label_column));
    out.write("effective-config.txt", serialize_config(config));
    std::printf("transform method=%s rows=%zu columns=%zu%s\n", method.c_str(),
                features.rows(), features.cols(),
                config.run.feature_labels ? " (+label column)" : "");
    std::printf("wrote %s\n", out.path("features.csv").c_str());
  });
}

int cmd_train_eval(const RunConfig& config) {
  OutputTracker out(config.run.out_dir);
  return guarded(out, [&] {
    validate_common(config);
    require(config.dataset.test_count > 0,
            "train-eval needs a test split (set dataset.test_count)");
    const bool sweeping = config.pipeline.ngrams.size() > 1;

    const LabeledDataset dataset = load_dataset(config);
    const TextPipeline pipeline = make_pipeline(config);
    const std::size_t d = config.pipeline.embed_dim;
    const std::size_t p = config.pipeline.branching;
    const std::string dataset_name = dataset_stem(config.dataset.path);

    // Evaluation text is always numericalized with plain unigrams, whatever
    // gram size the training side uses.
    const SplitData dev = numericalize_split(dataset, Split::dev, pipeline, 1);
    const SplitData test = numericalize_split(dataset, Split::test, pipeline, 1);
    if (test.labels.empty()) {
      throw InvalidInputError("the test split is empty; nothing to evaluate");
    }

    out.prepare();
    out.write("effective-config.txt", serialize_config(config));

    std::vector<ReportRow> rows;
    for (std::size_t ngram : config.pipeline.ngrams) {
      const SplitData train =
          numericalize_split(dataset, Split::train, pipeline, ngram);
      if (train.sentences.empty()) {
        throw InvalidInputError("the train split is empty; nothing to fit");
      }
      for (const std::string& method : config.run.methods) {
        const std::string label = method_label(method, ngram, sweeping);
        Matrix train_features;
        Matrix dev_features;
        Matrix test_features;
        if (method == "tmpca") {
          const TmpcaModel model = tmpca_fit(train.sentences, p);
          out.write("model-" + label + ".json", to_json(model));
          train_features = tmpca_apply_batch(model, train.sentences);
          if (!dev.sentences.empty())
            dev_features = tmpca_apply_batch(model, dev.sentences);
          test_features = tmpca_apply_batch(model, test.sentences);
        } else if (method == "pca") {
          const PcaTransform model =
              pca_fit(flatten_sentences(train.sentences), d);
          out.write("model-" + label + ".json", to_json(model));
          train_features =
              pca_apply_batch(model, flatten_sentences(train.sentences));
          if (!dev.sentences.empty())
            dev_features =
                pca_apply_batch(model, flatten_sentences(dev.sentences));
          test_features =
              pca_apply_batch(model, flatten_sentences(test.sentences));
        } else {  // raw
          train_features = flatten_sentences(train.sentences);
          if (!dev.sentences.empty())
            dev_features = flatten_sentences(dev.sentences);
          test_features = flatten_sentences(test.sentences);
        }

        const double lambda =
            choose_lambda(config, train_features, train.labels, dev, dev_features);
        SvmFitOptions options{lambda, config.svm.epochs, config.run.seed};
        const Clock::time_point start = Clock::now();
        const SvmModel svm = svm_fit(train_features, train.labels, options);
        const double train_seconds = seconds_since(start);
        out.write("svm-" + label + ".json", to_json(svm));

        const double err = error_rate(svm, test_features, test.labels);
        rows.push_back({label, dataset_name, "test", err, train_seconds});
        std::printf(
            "train-eval method=%s lambda=%s test_error=%s train_seconds=%s\n",
            label.c_str(), format_double(lambda).c_str(),
            format_double(err).c_str(), format_double(train_seconds).c_str());
      }
    }

    out.write("report.csv", format_report_csv(rows));
    std::printf("wrote %s (%zu rows)\n", out.path("report.csv").c_str(),
                rows.size());
  });
}

int cmd_bench(const RunConfig& config) {
  OutputTracker out(config.run.out_dir);
  return guarded(out, [&] {
    validate_common(config);
    BenchOptions options;
    options.repetitions = config.bench.repetitions;
    options.seed = config.run.seed;
    options.element_budget = config.bench.element_budget;

    const ScalingResult result =
        scaling_experiment(config.bench.n_list, config.bench.d, config.bench.m,
                           config.bench.p, options);
    std::vector<TimingRecord> records = result.records;
    if (config.bench.plot_data) {
      for (std::size_t n : config.bench.n_list) {
        records.push_back(time_fit("svm_raw", config.bench.m, n,
                                   config.bench.d, config.bench.p, options));
        records.push_back(time_fit("svm_reduced", config.bench.m, n,
                                   config.bench.d, config.bench.p, options));
      }
    }

    out.prepare();
    const std::string timings_path = out.path("timings.csv");
    emit_csv(records, timings_path);
    out.note("timings.csv");
    if (read_timings_csv(timings_path) != records) {
      throw IoError("output validation failed: '" + timings_path +
                    "' does not read back intact");
    }

    if (config.bench.plot_data) {
      // One file per method so each maps onto one curve family of the
      // reference time-vs-size figures.
      std::vector<std::string> methods;
      for (const TimingRecord& record : records) {
        if (std::find(methods.begin(), methods.end(), record.method) ==
            methods.end()) {
          methods.push_back(record.method);
        }
      }
      for (const std::string& method : methods) {
        std::string content = "n,wall_seconds,predicted_cost\n";
        for (const TimingRecord& record : records) {
          if (record.method != method) continue;
          content += std::to_string(record.n) + ',' +
                     format_double(record.wall_seconds) + ',' +
                     format_double(record.predicted_cost) + '\n';
        }
        out.write("plot-" + method + ".csv", content);
      }
    }

    out.write("effective-config.txt", serialize_config(config));
    std::printf("bench records=%zu\n", records.size());
    std::printf("loglog slope tmpca=%s pca=%s\n",
                format_double(result.slope_tmpca).c_str(),
                format_double(result.slope_pca).c_str());
    std::printf("wrote %s\n", timings_path.c_str());
  });
}

}  // namespace tmpca::cli
