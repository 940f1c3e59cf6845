#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "fzdr/baselines.hpp"
#include "fzdr/corpus.hpp"
#include "fzdr/errors.hpp"
#include "fzdr/weighting.hpp"

namespace fzdr {

/// Byte layout: docs/model-format.md.
inline constexpr std::uint32_t model_format_version = 1;

enum class ModelKind : std::uint32_t { fc = 1, svd = 2, pca = 3, weights = 4 };

class ModelError : public ParseError {
 public:
  enum class Code { not_a_model, version_mismatch, checksum_mismatch, truncated, corrupt };
  ModelError(Code code, const std::string& what) : ParseError(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

using ModelPayload = std::variant<FuzzyModel, SvdModel, PcaModel, GlobalWeightVector>;

struct SavedModel {
  std::uint64_t vocabulary_checksum = 0;
  std::uint64_t vocabulary_size = 0;
  /// Unix seconds; SOURCE_DATE_EPOCH when set, else 0, so files are reproducible.
  std::uint64_t created = 0;
  ModelPayload payload;

  ModelKind kind() const;
};

/// Binds a payload to the vocabulary it was fit on.
SavedModel make_saved_model(ModelPayload payload, const Vocabulary& vocabulary);

std::string serialize_model(const SavedModel& model);
/// Throws ModelError on bad magic, version, length or payload shape.
SavedModel deserialize_model(const std::string& bytes);

/// Writes to a sibling temp file, then renames over `path`.
void save_model(const SavedModel& model, const std::string& path);
SavedModel load_model(const std::string& path);

/// Throws ModelError(checksum_mismatch) unless `vocabulary` is the one the model was fit on.
void check_vocabulary(const SavedModel& model, const Vocabulary& vocabulary);

}  // namespace fzdr
