#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "run_config.hpp"
#include "tmpca/errors.hpp"

namespace {

using tmpca::cli::RunConfig;

/// Holds the shared flag values plus the CLI11 handles needed to tell
/// "user passed this" from "still at its default", so flags override config
/// keys only when actually given.
struct Flags {
  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string out_dir;
  std::string ngram;
  std::string method;
  std::size_t branch = 0;
  std::string model;
  bool labels = false;
  bool plot_data = false;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* out_dir_opt = nullptr;
  CLI::Option* ngram_opt = nullptr;
  CLI::Option* method_opt = nullptr;
  CLI::Option* branch_opt = nullptr;
  CLI::Option* model_opt = nullptr;
  CLI::Option* labels_opt = nullptr;
  CLI::Option* plot_opt = nullptr;
};

void add_shared_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path,
                  "Config file: flat key = value lines under [sections]");
  f.seed_opt = sub->add_option("--seed", f.seed,
                               "Global RNG seed (overrides run.seed)");
  f.threads_opt = sub->add_option("--threads", f.threads,
                                  "Worker threads (overrides run.threads)");
  f.out_dir_opt = sub->add_option("--out-dir", f.out_dir,
                                  "Output directory (overrides run.out_dir)");
  f.ngram_opt = sub->add_option(
      "--ngram", f.ngram,
      "Gram size; a comma list sweeps sizes in train-eval (overrides "
      "pipeline.ngram)");
  f.method_opt = sub->add_option(
      "--method", f.method,
      "tmpca, pca, raw, all, or a comma list (overrides run.method)");
  f.branch_opt = sub->add_option(
      "--branch", f.branch,
      "Tree branching factor P (overrides pipeline.branching)");
}

RunConfig build_config(const Flags& f) {
  RunConfig config;
  if (!f.config_path.empty()) {
    config = tmpca::cli::parse_config_file(f.config_path);
  }
  if (f.seed_opt->count() > 0) config.run.seed = f.seed;
  if (f.threads_opt->count() > 0) config.run.threads = f.threads;
  if (f.out_dir_opt->count() > 0) config.run.out_dir = f.out_dir;
  if (f.ngram_opt->count() > 0) {
    config.pipeline.ngrams = tmpca::cli::parse_size_list(f.ngram, "ngram");
  }
  if (f.method_opt->count() > 0) {
    config.run.methods = tmpca::cli::parse_method_list(f.method);
  }
  if (f.branch_opt->count() > 0) config.pipeline.branching = f.branch;
  if (f.model_opt != nullptr && f.model_opt->count() > 0) {
    config.run.model_path = f.model;
  }
  if (f.labels_opt != nullptr && f.labels_opt->count() > 0) {
    config.run.feature_labels = true;
  }
  if (f.plot_opt != nullptr && f.plot_opt->count() > 0) {
    config.bench.plot_data = true;
  }
  if (config.run.threads > 1) {
    std::fprintf(stderr,
                 "note: this build's kernels are single-threaded; timed "
                 "regions run sequentially regardless of --threads\n");
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Tree-structured multi-linear principal component analysis for "
      "sequence dimension reduction"};
  app.require_subcommand(1);

  Flags fit_flags;
  Flags transform_flags;
  Flags train_flags;
  Flags bench_flags;

  CLI::App* fit = app.add_subcommand(
      "fit", "Fit a reduction model on the train split; writes model.json");
  add_shared_flags(fit, fit_flags);

  CLI::App* transform = app.add_subcommand(
      "transform",
      "Reduce every dataset record with a fitted model; writes features.csv");
  add_shared_flags(transform, transform_flags);
  transform_flags.model_opt = transform->add_option(
      "--model", transform_flags.model,
      "Model file to apply (default: <out-dir>/model.json)");
  transform_flags.labels_opt = transform->add_flag(
      "--labels", transform_flags.labels,
      "Prepend each row's +1/-1 label to features.csv");

  CLI::App* train_eval = app.add_subcommand(
      "train-eval",
      "Reduce, train the linear classifier, and report test error; writes "
      "report.csv and per-method models");
  add_shared_flags(train_eval, train_flags);

  CLI::App* bench = app.add_subcommand(
      "bench",
      "Time reduction methods over a sentence-length grid; writes "
      "timings.csv");
  add_shared_flags(bench, bench_flags);
  bench_flags.plot_opt = bench->add_flag(
      "--plot-data", bench_flags.plot_data,
      "Also write per-method plot-*.csv files (adds classifier timings)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) return tmpca::cli::cmd_fit(build_config(fit_flags));
    if (transform->parsed()) {
      return tmpca::cli::cmd_transform(build_config(transform_flags));
    }
    if (train_eval->parsed()) {
      return tmpca::cli::cmd_train_eval(build_config(train_flags));
    }
    if (bench->parsed()) return tmpca::cli::cmd_bench(build_config(bench_flags));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;  // unreachable: require_subcommand(1) guarantees a branch
}
