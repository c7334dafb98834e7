#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tmpca {

enum class Split { train, dev, test };

const char* split_name(Split split);

struct Record {
  std::string text;
  int label = 0;  // +1 or -1
  Split split = Split::train;
};

struct LabeledDataset {
  std::vector<Record> records;
  std::size_t dropped_empty = 0;  // empty-text lines discarded at ingest

  std::size_t size() const { return records.size(); }

  /// Indices of the records tagged with `split`, in record order.
  std::vector<std::size_t> split_indices(Split split) const;
};

/// Reads "label<TAB>text" lines, mapping label strings through `label_map`
/// (e.g. {"spam": +1, "ham": -1}). CRLF endings are tolerated. Lines with
/// empty text are dropped and counted; an unknown label or a missing tab is
/// an IngestError naming the line. Every record starts tagged train.
LabeledDataset ingest_tsv(const std::string& path,
                          const std::map<std::string, int>& label_map);

/// Deterministically shuffles record indices with the given seed, then tags
/// the first dev_count as dev, the next test_count as test, and the rest as
/// train. Throws InvalidArgumentError when dev_count + test_count exceeds
/// the dataset size.
void assign_splits_shuffled(LabeledDataset& dataset, std::size_t dev_count,
                            std::size_t test_count, std::uint64_t seed);

}  // namespace tmpca
