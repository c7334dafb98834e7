#include "tmpca/model_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tmpca/errors.hpp"

namespace tmpca {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (double v : m.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

json transform_to_json(const PcaTransform& t) {
  return json{{"in_dim", t.in_dim},
              {"out_dim", t.out_dim},
              {"mean", t.mean},
              {"eigenvalues", t.eigenvalues},
              {"basis", matrix_to_json(t.basis)}};
}

[[noreturn]] void fail(const std::string& why) {
  throw IngestError("model parse: " + why);
}

json parse(const std::string& text) {
  json document = json::parse(text, nullptr, false);
  if (document.is_discarded()) fail("not valid JSON");
  return document;
}

double number_field(const json& object, const char* key) {
  if (!object.contains(key) || !object[key].is_number()) {
    fail(std::string("missing or non-numeric field '") + key + "'");
  }
  return object[key].get<double>();
}

std::uint64_t uint_field(const json& object, const char* key) {
  if (object.contains(key)) {
    const json& v = object[key];
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
  }
  fail(std::string("field '") + key + "' is not a non-negative integer");
}

std::size_t size_field(const json& object, const char* key) {
  return static_cast<std::size_t>(uint_field(object, key));
}

std::vector<double> vector_field(const json& object, const char* key) {
  if (!object.contains(key) || !object[key].is_array()) {
    fail(std::string("missing or non-array field '") + key + "'");
  }
  std::vector<double> out;
  out.reserve(object[key].size());
  for (const json& v : object[key]) {
    if (!v.is_number()) {
      fail(std::string("non-numeric entry in '") + key + "'");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Matrix matrix_field(const json& object, const char* key, std::size_t rows,
                    std::size_t cols) {
  if (!object.contains(key) || !object[key].is_array() ||
      object[key].size() != rows) {
    fail(std::string("field '") + key + "' must be an array of " +
         std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = object[key][r];
    if (!row.is_array() || row.size() != cols) {
      fail(std::string("row ") + std::to_string(r) + " of '" + key +
           "' must hold " + std::to_string(cols) + " numbers");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number()) {
        fail(std::string("non-numeric entry in '") + key + "'");
      }
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

PcaTransform transform_from_json(const json& object) {
  PcaTransform t;
  t.in_dim = size_field(object, "in_dim");
  t.out_dim = size_field(object, "out_dim");
  if (t.out_dim == 0 || t.out_dim > t.in_dim) {
    fail("out_dim must be in [1, in_dim]");
  }
  t.mean = vector_field(object, "mean");
  if (t.mean.size() != t.in_dim) {
    fail("mean length does not match in_dim");
  }
  t.eigenvalues = vector_field(object, "eigenvalues");
  if (t.eigenvalues.size() != t.out_dim) {
    fail("eigenvalues length does not match out_dim");
  }
  t.basis = matrix_field(object, "basis", t.out_dim, t.in_dim);
  return t;
}

}  // namespace

std::string to_json(const PcaTransform& transform) {
  return transform_to_json(transform).dump();
}

std::string to_json(const TmpcaModel& model) {
  json levels = json::array();
  for (const PcaTransform& level : model.levels) {
    levels.push_back(transform_to_json(level));
  }
  return json{{"format_version", 1},
              {"n", model.n},
              {"d", model.d},
              {"p", model.p},
              {"levels", std::move(levels)}}
      .dump();
}

std::string to_json(const SvmModel& model) {
  return json{{"weights", model.weights},
              {"bias", model.bias},
              {"lambda", model.lambda},
              {"epochs_trained", model.epochs_trained},
              {"seed", model.seed}}
      .dump();
}

PcaTransform pca_transform_from_json(const std::string& text) {
  return transform_from_json(parse(text));
}

TmpcaModel tmpca_model_from_json(const std::string& text) {
  const json document = parse(text);
  if (size_field(document, "format_version") != 1) {
    fail("unsupported format_version");
  }
  TmpcaModel model;
  model.n = size_field(document, "n");
  model.d = size_field(document, "d");
  model.p = size_field(document, "p");
  if (model.n == 0 || model.d == 0 || model.p < 2) {
    fail("model shape fields must satisfy n >= 1, d >= 1, p >= 2");
  }

  if (!document.contains("levels") || !document["levels"].is_array()) {
    fail("missing or non-array field 'levels'");
  }
  std::size_t expected_levels = 0;
  for (std::size_t rest = model.n; rest > 1; rest /= model.p) {
    if (rest % model.p != 0) fail("n is not a power of p");
    ++expected_levels;
  }
  if (document["levels"].size() != expected_levels) {
    fail("expected " + std::to_string(expected_levels) + " levels, found " +
         std::to_string(document["levels"].size()));
  }
  for (const json& entry : document["levels"]) {
    PcaTransform level = transform_from_json(entry);
    if (level.in_dim != model.p * model.d || level.out_dim != model.d) {
      fail("level transform shape does not match (p*d -> d)");
    }
    model.levels.push_back(std::move(level));
  }
  return model;
}

SvmModel svm_model_from_json(const std::string& text) {
  const json document = parse(text);
  SvmModel model;
  model.weights = vector_field(document, "weights");
  model.bias = number_field(document, "bias");
  model.lambda = number_field(document, "lambda");
  model.epochs_trained = size_field(document, "epochs_trained");
  model.seed = uint_field(document, "seed");
  return model;
}

ModelKind sniff_model_kind(const std::string& text) {
  const json document = parse(text);
  if (!document.is_object()) fail("top level is not an object");
  if (document.contains("levels")) return ModelKind::tmpca_model;
  if (document.contains("basis")) return ModelKind::pca_transform;
  if (document.contains("weights")) return ModelKind::svm_model;
  fail("no recognizable model keys (levels / basis / weights)");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("write_text_file: cannot open '" + path + "' for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out.flush()) {
    throw IoError("write_text_file: write to '" + path + "' failed");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("read_text_file: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("read_text_file: read from '" + path + "' failed");
  }
  return buffer.str();
}

}  // namespace tmpca
