#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tmpca/embedding.hpp"
#include "tmpca/errors.hpp"
#include "tmpca/matrix.hpp"

namespace tmpca {

/// One pipeline unit: a single token or an n-gram of consecutive tokens.
/// Keeping the constituent tokens (rather than a joined string) lets the
/// embedder average the members' vectors.
struct Gram {
  std::vector<std::string> tokens;

  friend bool operator==(const Gram&, const Gram&) = default;
};

/// Splits on every maximal run of non-alphanumeric bytes (ASCII letters and
/// digits are token characters; anything else, including all non-ASCII
/// bytes, separates). Never yields empty tokens. `lowercase` applies ASCII
/// case folding.
std::vector<std::string> tokenize(std::string_view text, bool lowercase);

/// Stop-word file: one lowercase word per line; '#' starts a comment.
/// Throws ConfigError when the file cannot be read.
std::unordered_set<std::string> load_stopwords(const std::string& path);

/// Order-preserving filter.
std::vector<std::string> remove_stopwords(
    std::vector<std::string> tokens,
    const std::unordered_set<std::string>& stopset);

/// Overlapping windows of n consecutive tokens ("1 2 3 4" at n=2 gives
/// grams 12, 23, 34). Shorter-than-n input becomes one whole-sequence gram;
/// empty input stays empty. Throws InvalidArgumentError when n = 0.
std::vector<Gram> ngram_merge(const std::vector<std::string>& tokens,
                              std::size_t n);

/// Trims to the first target_len units or appends `pad` units up to
/// target_len. Throws InvalidArgumentError when target_len = 0.
template <typename Unit>
std::vector<Unit> pad_or_truncate(std::vector<Unit> units,
                                  std::size_t target_len, const Unit& pad) {
  if (target_len == 0) {
    throw InvalidArgumentError("pad_or_truncate: target length must be positive");
  }
  if (units.size() > target_len) {
    units.resize(target_len);
  } else {
    units.resize(target_len, pad);
  }
  return units;
}

/// Smallest power of `branching` that is >= sentence_len (the model's
/// actual input length after padding).
std::size_t effective_length(std::size_t sentence_len, std::size_t branching);

/// Everything needed to turn text into a fixed-shape numeric sentence.
struct PipelineConfig {
  std::size_t sentence_len = 0;  // requested N; rounded up to a power of P
  std::size_t embed_dim = 0;     // D
  std::size_t branching = 2;     // P
  std::size_t ngram = 1;
  std::string stopword_path;     // empty -> no stop-word filtering
  bool lowercase = true;
};

/// The fixed preprocessing cascade: tokenize -> stop words -> stem ->
/// n-gram merge -> pad/truncate -> embed. Deterministic end to end.
class TextPipeline {
 public:
  TextPipeline(PipelineConfig config, Embedder embedder);

  /// Produces an effective_len() x D matrix using config.ngram.
  Matrix numericalize(std::string_view text) const;

  /// Same, with an explicit gram size (evaluation runs use 1 regardless of
  /// the training configuration).
  Matrix numericalize(std::string_view text, std::size_t ngram) const;

  const PipelineConfig& config() const { return config_; }
  const Embedder& embedder() const { return embedder_; }
  std::size_t effective_len() const { return effective_len_; }

 private:
  PipelineConfig config_;
  Embedder embedder_;
  std::unordered_set<std::string> stopwords_;
  std::size_t effective_len_;
};

}  // namespace tmpca
