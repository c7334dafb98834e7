#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace tmpca {

/// Reserved token appended to reach a fixed sentence length. Always embeds
/// to the zero vector so padded positions carry no energy.
inline constexpr const char* kPadToken = "<pad>";

/// Pretrained token -> vector table loaded from a plain-text file.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }

  /// Number of duplicate tokens replaced during load (last entry wins).
  std::size_t duplicate_count() const { return duplicates_; }

  /// Pointer to the token's dim() coefficients, or nullptr when absent.
  const double* find(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? nullptr : vectors_.data() + it->second * dim_;
  }

  void insert(const std::string& token, const std::vector<double>& vector);

 private:
  std::size_t dim_;
  std::size_t duplicates_ = 0;
  std::unordered_map<std::string, std::size_t> index_;  // token -> row
  std::vector<double> vectors_;                         // rows of width dim_
};

/// Parses the plain-text embedding format: a header line
/// "<vocab_size> <dim>" followed by exactly vocab_size lines of
/// "token v1 ... v<dim>". Throws IngestError naming the offending line on
/// any malformed content; IoError when the file cannot be read.
EmbeddingTable load_embedding_table(const std::string& path);

/// Maps tokens (and token groups) to D-vectors. Two modes:
///  - hashing: a deterministic pseudorandom unit vector derived from
///    (seed, token bytes); identical across runs and platforms.
///  - table: exact lookup; out-of-vocabulary tokens embed to the zero
///    vector and are counted.
/// A group of tokens embeds as the arithmetic mean of its members' vectors;
/// the pad token always embeds to zero.
class Embedder {
 public:
  static Embedder hashing(std::size_t dim, std::uint64_t seed);
  static Embedder table(EmbeddingTable table);

  std::size_t dim() const { return dim_; }

  /// Writes the token's embedding into out[0..dim).
  void embed_token(const std::string& token, double* out) const;
  std::vector<double> embed_token(const std::string& token) const;

  /// Mean of the member tokens' embeddings; empty group -> zero vector.
  void embed_group(const std::vector<std::string>& tokens, double* out) const;
  std::vector<double> embed_group(const std::vector<std::string>& tokens) const;

  /// Out-of-vocabulary lookups seen so far (table mode; always 0 in hash
  /// mode). Shared across copies of this embedder.
  std::size_t oov_count() const { return oov_->load(); }

 private:
  enum class Mode { hashing, table };

  Embedder(Mode mode, std::size_t dim)
      : mode_(mode), dim_(dim), oov_(std::make_shared<std::atomic<std::size_t>>(0)) {}

  Mode mode_;
  std::size_t dim_;
  std::uint64_t seed_ = 0;
  std::shared_ptr<const EmbeddingTable> table_;
  std::shared_ptr<std::atomic<std::size_t>> oov_;
};

}  // namespace tmpca
