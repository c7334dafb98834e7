#include "tmpca/embedding.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "tmpca/errors.hpp"
#include "tmpca/rng.hpp"

namespace tmpca {

void EmbeddingTable::insert(const std::string& token,
                            const std::vector<double>& vector) {
  if (vector.size() != dim_) {
    throw InvalidArgumentError("EmbeddingTable::insert: expected " +
                               std::to_string(dim_) + " coefficients, got " +
                               std::to_string(vector.size()));
  }
  auto [it, inserted] = index_.try_emplace(token, index_.size());
  if (inserted) {
    vectors_.insert(vectors_.end(), vector.begin(), vector.end());
  } else {
    // Duplicate token: the latest definition wins.
    std::memcpy(vectors_.data() + it->second * dim_, vector.data(),
                dim_ * sizeof(double));
    ++duplicates_;
  }
}

EmbeddingTable load_embedding_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("load_embedding_table: cannot open '" + path + "'");
  }

  auto fail = [&path](std::size_t line_no, const std::string& why) -> IngestError {
    return IngestError("load_embedding_table: " + path + " line " +
                       std::to_string(line_no) + ": " + why);
  };

  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) {
    throw fail(1, "missing header '<vocab_size> <dim>'");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::size_t vocab_size = 0;
  std::size_t dim = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> vocab_size >> dim) || dim == 0 || (header >> extra)) {
      throw fail(1, "malformed header '" + line + "'");
    }
  }

  EmbeddingTable table(dim);
  std::vector<double> coeffs(dim);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    ++line_no;
    if (!std::getline(in, line)) {
      throw fail(line_no, "file ends before the " + std::to_string(vocab_size) +
                              " entries promised by the header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::istringstream entry(line);
    std::string token;
    if (!(entry >> token)) {
      throw fail(line_no, "empty entry line");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      if (!(entry >> coeffs[c])) {
        throw fail(line_no, "expected " + std::to_string(dim) +
                                " coefficients for token '" + token + "'");
      }
    }
    std::string extra;
    if (entry >> extra) {
      throw fail(line_no, "trailing content '" + extra + "' after " +
                              std::to_string(dim) + " coefficients");
    }
    table.insert(token, coeffs);
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) {
      throw fail(line_no, "content beyond the " + std::to_string(vocab_size) +
                              " entries promised by the header");
    }
  }
  return table;
}

Embedder Embedder::hashing(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) {
    throw InvalidArgumentError("Embedder::hashing: dimension must be positive");
  }
  Embedder e(Mode::hashing, dim);
  e.seed_ = seed;
  return e;
}

Embedder Embedder::table(EmbeddingTable table) {
  if (table.dim() == 0) {
    throw InvalidArgumentError("Embedder::table: dimension must be positive");
  }
  Embedder e(Mode::table, table.dim());
  e.table_ = std::make_shared<const EmbeddingTable>(std::move(table));
  return e;
}

void Embedder::embed_token(const std::string& token, double* out) const {
  if (token == kPadToken) {
    std::fill(out, out + dim_, 0.0);
    return;
  }
  if (mode_ == Mode::table) {
    const double* row = table_->find(token);
    if (row == nullptr) {
      oov_->fetch_add(1);
      std::fill(out, out + dim_, 0.0);
    } else {
      std::memcpy(out, row, dim_ * sizeof(double));
    }
    return;
  }

  // Hashing mode: a per-token generator stream, normalized to unit length.
  // Every operation here (integer mixing, the 2^-53 scaling, sqrt, division)
  // is exactly specified by IEEE 754, so the vector is identical on any
  // conforming platform.
  SplitMix64 rng(fnv1a64(token, seed_));
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    out[i] = rng.uniform_symmetric();
    norm_sq += out[i] * out[i];
  }
  if (norm_sq == 0.0) {
    out[0] = 1.0;  // unreachable in practice; keeps the unit-norm contract
    return;
  }
  const double norm = std::sqrt(norm_sq);
  for (std::size_t i = 0; i < dim_; ++i) out[i] /= norm;
}

std::vector<double> Embedder::embed_token(const std::string& token) const {
  std::vector<double> out(dim_);
  embed_token(token, out.data());
  return out;
}

void Embedder::embed_group(const std::vector<std::string>& tokens,
                           double* out) const {
  std::fill(out, out + dim_, 0.0);
  if (tokens.empty()) return;
  if (tokens.size() == 1) {
    embed_token(tokens.front(), out);
    return;
  }
  std::vector<double> buffer(dim_);
  for (const std::string& token : tokens) {
    embed_token(token, buffer.data());
    for (std::size_t i = 0; i < dim_; ++i) out[i] += buffer[i];
  }
  const double scale = 1.0 / static_cast<double>(tokens.size());
  for (std::size_t i = 0; i < dim_; ++i) out[i] *= scale;
}

std::vector<double> Embedder::embed_group(
    const std::vector<std::string>& tokens) const {
  std::vector<double> out(dim_);
  embed_group(tokens, out.data());
  return out;
}

}  // namespace tmpca
