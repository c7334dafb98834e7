#pragma once

#include <string>

#include "tmpca/pca.hpp"
#include "tmpca/svm.hpp"
#include "tmpca/tree.hpp"

namespace tmpca {

/// JSON encodings. Doubles are written with shortest-round-trip precision,
/// so save -> load reproduces every coefficient bit for bit.
std::string to_json(const PcaTransform& transform);
std::string to_json(const TmpcaModel& model);
std::string to_json(const SvmModel& model);

/// Parsers throw IngestError on malformed or inconsistent content.
PcaTransform pca_transform_from_json(const std::string& text);
TmpcaModel tmpca_model_from_json(const std::string& text);
SvmModel svm_model_from_json(const std::string& text);

/// Which model type a JSON document holds, decided by its distinguishing
/// keys ("levels" -> tmpca, "basis" -> pca transform, "weights" -> svm).
enum class ModelKind { pca_transform, tmpca_model, svm_model };
ModelKind sniff_model_kind(const std::string& text);

/// Whole-file helpers; IoError on filesystem failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace tmpca
