#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"
#include "tmpca/matrix.hpp"

namespace tmpca::cli {

/// Each command creates run.out_dir, writes its fixed-name outputs there,
/// and validates every file by reading it back. Returns 0 only when all
/// outputs were written and validated; on any failure it removes the files
/// it wrote this run, prints the error to stderr, and returns 1.
///
/// fit:        model.json, effective-config.txt
/// transform:  features.csv, effective-config.txt
/// train-eval: report.csv, model-<method>[-n<k>].json,
///             svm-<method>[-n<k>].json, effective-config.txt
/// bench:      timings.csv, effective-config.txt,
///             plot-<method>.csv when bench.plot_data is set
int cmd_fit(const RunConfig& config);
int cmd_transform(const RunConfig& config);
int cmd_train_eval(const RunConfig& config);
int cmd_bench(const RunConfig& config);

/// Dataset column value for report rows: the file name without directories
/// or extension ("data/sms.tsv" -> "sms"); "dataset" when that is empty.
std::string dataset_stem(const std::string& path);

/// Method column value: the plain name, or "<method>-n<k>" when the run
/// sweeps more than one gram size so rows stay distinguishable.
std::string method_label(const std::string& method, std::size_t ngram,
                         bool sweeping);

/// One row per matrix row, comma-separated full-precision columns, no
/// header. When `labels` is non-null its entries (+1/-1) lead each row.
std::string format_features_csv(const Matrix& features,
                                const std::vector<int>* labels);

}  // namespace tmpca::cli
