#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "tmpca/errors.hpp"
#include "tmpca/model_io.hpp"

namespace tmpca::cli {
namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

[[noreturn]] void bad_line(std::size_t line, const std::string& why) {
  throw ConfigError("config line " + std::to_string(line) + ": " + why);
}

std::uint64_t to_u64(const std::string& value, std::size_t line) {
  if (value.empty() || value[0] == '-') bad_line(line, "expected a non-negative integer, got '" + value + "'");
  errno = 0;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value.c_str(), &end, 10);
  if (errno != 0 || end == value.c_str() || *end != '\0')
    bad_line(line, "expected a non-negative integer, got '" + value + "'");
  return static_cast<std::uint64_t>(parsed);
}

std::size_t to_size(const std::string& value, std::size_t line) {
  return static_cast<std::size_t>(to_u64(value, line));
}

double to_double(const std::string& value, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (errno != 0 || end == value.c_str() || *end != '\0')
    bad_line(line, "expected a number, got '" + value + "'");
  return parsed;
}

bool to_bool(const std::string& value, std::size_t line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_line(line, "expected a boolean (true/false), got '" + value + "'");
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  std::stringstream stream(text);
  while (std::getline(stream, current, ',')) parts.push_back(trim(current));
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string join_sizes(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join_strings(const std::vector<std::string>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += values[i];
  }
  return out;
}

void apply_key(RunConfig& config, const std::string& section,
               const std::string& key, const std::string& value,
               std::size_t line) {
  if (section == "dataset") {
    if (key == "path") config.dataset.path = value;
    else if (key == "positive_label") config.dataset.positive_label = value;
    else if (key == "negative_label") config.dataset.negative_label = value;
    else if (key == "dev_count") config.dataset.dev_count = to_size(value, line);
    else if (key == "test_count") config.dataset.test_count = to_size(value, line);
    else bad_line(line, "unknown key '" + key + "' in [dataset]");
    return;
  }
  if (section == "pipeline") {
    if (key == "sentence_len") config.pipeline.sentence_len = to_size(value, line);
    else if (key == "embed_dim") config.pipeline.embed_dim = to_size(value, line);
    else if (key == "branching") config.pipeline.branching = to_size(value, line);
    else if (key == "ngram") config.pipeline.ngrams = parse_size_list(value, "ngram");
    else if (key == "stopwords") config.pipeline.stopword_path = value;
    else if (key == "vectors") config.pipeline.vectors_path = value;
    else if (key == "lowercase") config.pipeline.lowercase = to_bool(value, line);
    else bad_line(line, "unknown key '" + key + "' in [pipeline]");
    return;
  }
  if (section == "svm") {
    if (key == "lambda") {
      if (value == "auto") {
        config.svm.auto_lambda = true;
      } else {
        config.svm.auto_lambda = false;
        config.svm.lambda = to_double(value, line);
      }
    } else if (key == "epochs") {
      config.svm.epochs = to_size(value, line);
    } else {
      bad_line(line, "unknown key '" + key + "' in [svm]");
    }
    return;
  }
  if (section == "run") {
    if (key == "method") config.run.methods = parse_method_list(value);
    else if (key == "out_dir") config.run.out_dir = value;
    else if (key == "seed") config.run.seed = to_u64(value, line);
    else if (key == "threads") config.run.threads = to_size(value, line);
    else if (key == "feature_labels") config.run.feature_labels = to_bool(value, line);
    else if (key == "model") config.run.model_path = value;
    else bad_line(line, "unknown key '" + key + "' in [run]");
    return;
  }
  if (section == "bench") {
    if (key == "m") config.bench.m = to_size(value, line);
    else if (key == "d") config.bench.d = to_size(value, line);
    else if (key == "n_list") config.bench.n_list = parse_size_list(value, "n_list");
    else if (key == "p") config.bench.p = to_size(value, line);
    else if (key == "repetitions") config.bench.repetitions = to_size(value, line);
    else if (key == "element_budget") config.bench.element_budget = to_double(value, line);
    else if (key == "plot_data") config.bench.plot_data = to_bool(value, line);
    else bad_line(line, "unknown key '" + key + "' in [bench]");
    return;
  }
  bad_line(line, "unknown section [" + section + "]");
}

}  // namespace

std::vector<std::size_t> parse_size_list(const std::string& text,
                                         const std::string& what) {
  const std::vector<std::string> parts = split_commas(text);
  if (parts.empty()) throw ConfigError(what + " list is empty");
  std::vector<std::size_t> values;
  values.reserve(parts.size());
  for (const std::string& part : parts) {
    if (part.empty()) throw ConfigError(what + " list has an empty entry in '" + text + "'");
    errno = 0;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(part.c_str(), &end, 10);
    if (part[0] == '-' || errno != 0 || end == part.c_str() || *end != '\0')
      throw ConfigError(what + " entry '" + part + "' is not a non-negative integer");
    values.push_back(static_cast<std::size_t>(parsed));
  }
  return values;
}

std::vector<std::string> parse_method_list(const std::string& text) {
  if (text == "all") return {"tmpca", "pca", "raw"};
  const std::vector<std::string> parts = split_commas(text);
  if (parts.empty()) throw ConfigError("method list is empty");
  for (const std::string& part : parts) {
    if (part != "tmpca" && part != "pca" && part != "raw")
      throw ConfigError("unknown method '" + part +
                        "' (expected tmpca, pca, raw, or all)");
  }
  return parts;
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
  std::stringstream stream(text);
  std::string raw_line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(stream, raw_line)) {
    ++line_no;
    if (!raw_line.empty() && raw_line.back() == '\r') raw_line.pop_back();
    const std::size_t hash = raw_line.find('#');
    if (hash != std::string::npos) raw_line.erase(hash);
    const std::string line = trim(raw_line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        bad_line(line_no, "malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      bad_line(line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) bad_line(line_no, "empty key");
    if (section.empty())
      bad_line(line_no, "key '" + key + "' appears before any [section]");
    apply_key(base, section, key, value, line_no);
  }
  return base;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
  return parse_config_text(read_text_file(path), std::move(base));
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  out += "[dataset]\n";
  out += "path = " + config.dataset.path + "\n";
  out += "positive_label = " + config.dataset.positive_label + "\n";
  out += "negative_label = " + config.dataset.negative_label + "\n";
  out += "dev_count = " + std::to_string(config.dataset.dev_count) + "\n";
  out += "test_count = " + std::to_string(config.dataset.test_count) + "\n";
  out += "\n[pipeline]\n";
  out += "sentence_len = " + std::to_string(config.pipeline.sentence_len) + "\n";
  out += "embed_dim = " + std::to_string(config.pipeline.embed_dim) + "\n";
  out += "branching = " + std::to_string(config.pipeline.branching) + "\n";
  out += "ngram = " + join_sizes(config.pipeline.ngrams) + "\n";
  out += "stopwords = " + config.pipeline.stopword_path + "\n";
  out += "vectors = " + config.pipeline.vectors_path + "\n";
  out += std::string("lowercase = ") + (config.pipeline.lowercase ? "true" : "false") + "\n";
  out += "\n[svm]\n";
  out += "lambda = " + (config.svm.auto_lambda ? std::string("auto")
                                               : format_double(config.svm.lambda)) + "\n";
  out += "epochs = " + std::to_string(config.svm.epochs) + "\n";
  out += "\n[run]\n";
  out += "method = " + join_strings(config.run.methods) + "\n";
  out += "out_dir = " + config.run.out_dir + "\n";
  out += "seed = " + std::to_string(config.run.seed) + "\n";
  out += "threads = " + std::to_string(config.run.threads) + "\n";
  out += std::string("feature_labels = ") + (config.run.feature_labels ? "true" : "false") + "\n";
  out += "model = " + config.run.model_path + "\n";
  out += "\n[bench]\n";
  out += "m = " + std::to_string(config.bench.m) + "\n";
  out += "d = " + std::to_string(config.bench.d) + "\n";
  out += "n_list = " + join_sizes(config.bench.n_list) + "\n";
  out += "p = " + std::to_string(config.bench.p) + "\n";
  out += "repetitions = " + std::to_string(config.bench.repetitions) + "\n";
  out += "element_budget = " + format_double(config.bench.element_budget) + "\n";
  out += std::string("plot_data = ") + (config.bench.plot_data ? "true" : "false") + "\n";
  return out;
}

}  // namespace tmpca::cli
