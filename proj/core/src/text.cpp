#include "tmpca/text.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <utility>

#include "tmpca/porter.hpp"

namespace tmpca {
namespace {

bool is_token_char(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') ||
         (c >= 'a' && c <= 'z');
}

char fold(char c, bool lowercase) {
  if (lowercase && c >= 'A' && c <= 'Z') return static_cast<char>(c - 'A' + 'a');
  return c;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, bool lowercase) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_token_char(static_cast<unsigned char>(c))) {
      current.push_back(fold(c, lowercase));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("load_stopwords: cannot open stop-word file '" + path + "'");
  }
  std::unordered_set<std::string> stopset;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    // Trim surrounding whitespace (covers CR from CRLF files too).
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    stopset.insert(line.substr(first, last - first + 1));
  }
  return stopset;
}

std::vector<std::string> remove_stopwords(
    std::vector<std::string> tokens,
    const std::unordered_set<std::string>& stopset) {
  if (stopset.empty()) return tokens;
  std::erase_if(tokens, [&stopset](const std::string& t) {
    return stopset.contains(t);
  });
  return tokens;
}

std::vector<Gram> ngram_merge(const std::vector<std::string>& tokens,
                              std::size_t n) {
  if (n == 0) {
    throw InvalidArgumentError("ngram_merge: gram size must be positive");
  }
  std::vector<Gram> grams;
  if (tokens.empty()) return grams;
  if (tokens.size() <= n) {
    grams.push_back(Gram{tokens});
    return grams;
  }
  grams.reserve(tokens.size() - n + 1);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    grams.push_back(Gram{{tokens.begin() + static_cast<std::ptrdiff_t>(i),
                          tokens.begin() + static_cast<std::ptrdiff_t>(i + n)}});
  }
  return grams;
}

std::size_t effective_length(std::size_t sentence_len, std::size_t branching) {
  if (sentence_len == 0) {
    throw InvalidArgumentError("effective_length: sentence length must be positive");
  }
  if (branching < 2) {
    throw InvalidArgumentError("effective_length: branching factor must be at least 2");
  }
  std::size_t len = 1;
  while (len < sentence_len) {
    if (len > std::numeric_limits<std::size_t>::max() / branching) {
      throw InvalidArgumentError(
          "effective_length: no representable power of the branching factor "
          "reaches the requested length");
    }
    len *= branching;
  }
  return len;
}

TextPipeline::TextPipeline(PipelineConfig config, Embedder embedder)
    : config_(std::move(config)), embedder_(std::move(embedder)) {
  if (config_.sentence_len == 0) {
    throw ConfigError("TextPipeline: sentence_len must be positive");
  }
  if (config_.embed_dim == 0) {
    throw ConfigError("TextPipeline: embed_dim must be positive");
  }
  if (config_.branching < 2) {
    throw ConfigError("TextPipeline: branching factor must be at least 2");
  }
  if (config_.ngram == 0) {
    throw ConfigError("TextPipeline: ngram must be positive");
  }
  if (embedder_.dim() != config_.embed_dim) {
    throw ConfigError("TextPipeline: embedder dimension " +
                      std::to_string(embedder_.dim()) +
                      " does not match embed_dim " +
                      std::to_string(config_.embed_dim));
  }
  if (!config_.stopword_path.empty()) {
    stopwords_ = load_stopwords(config_.stopword_path);
  }
  effective_len_ = effective_length(config_.sentence_len, config_.branching);
}

Matrix TextPipeline::numericalize(std::string_view text) const {
  return numericalize(text, config_.ngram);
}

Matrix TextPipeline::numericalize(std::string_view text,
                                  std::size_t ngram) const {
  std::vector<std::string> tokens = tokenize(text, config_.lowercase);
  tokens = remove_stopwords(std::move(tokens), stopwords_);
  for (std::string& token : tokens) token = porter_stem(std::move(token));

  std::vector<Gram> units = ngram_merge(tokens, ngram);
  units = pad_or_truncate(std::move(units), effective_len_,
                          Gram{{std::string(kPadToken)}});

  Matrix sentence(effective_len_, config_.embed_dim);
  for (std::size_t i = 0; i < effective_len_; ++i) {
    embedder_.embed_group(units[i].tokens, sentence.row(i).data());
  }
  return sentence;
}

}  // namespace tmpca
