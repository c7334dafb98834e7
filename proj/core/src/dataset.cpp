#include "tmpca/dataset.hpp"

#include <fstream>
#include <numeric>

#include "tmpca/errors.hpp"
#include "tmpca/rng.hpp"

namespace tmpca {

const char* split_name(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "?";
}

std::vector<std::size_t> LabeledDataset::split_indices(Split split) const {
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].split == split) indices.push_back(i);
  }
  return indices;
}

LabeledDataset ingest_tsv(const std::string& path,
                          const std::map<std::string, int>& label_map) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("ingest_tsv: cannot open '" + path + "'");
  }

  LabeledDataset dataset;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IngestError("ingest_tsv: " + path + " line " +
                        std::to_string(line_no) + ": no tab separator");
    }
    const std::string label_text = line.substr(0, tab);
    auto it = label_map.find(label_text);
    if (it == label_map.end()) {
      throw IngestError("ingest_tsv: " + path + " line " +
                        std::to_string(line_no) + ": unknown label '" +
                        label_text + "'");
    }

    std::string text = line.substr(tab + 1);
    if (text.find_first_not_of(" \t") == std::string::npos) {
      ++dataset.dropped_empty;
      continue;
    }
    dataset.records.push_back(Record{std::move(text), it->second, Split::train});
  }
  return dataset;
}

void assign_splits_shuffled(LabeledDataset& dataset, std::size_t dev_count,
                            std::size_t test_count, std::uint64_t seed) {
  const std::size_t total = dataset.records.size();
  if (dev_count + test_count > total) {
    throw InvalidArgumentError(
        "assign_splits_shuffled: dev (" + std::to_string(dev_count) +
        ") + test (" + std::to_string(test_count) +
        ") exceed the dataset size (" + std::to_string(total) + ")");
  }

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(seed);
  shuffle(order, rng);

  for (std::size_t i = 0; i < total; ++i) {
    Split split = Split::train;
    if (i < dev_count) {
      split = Split::dev;
    } else if (i < dev_count + test_count) {
      split = Split::test;
    }
    dataset.records[order[i]].split = split;
  }
}

}  // namespace tmpca
