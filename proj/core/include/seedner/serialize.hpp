#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "seedner/crf.hpp"
#include "seedner/error.hpp"
#include "seedner/mlm.hpp"

namespace seedner {

// Binary container, all integers little-endian, doubles as IEEE-754 bits:
//
//   "SNER"            4 bytes magic
//   format_version    u32
//   payload_length    u64
//   payload           sequence of records {u32 tag, u64 length, bytes}
//   checksum          u64 FNV-1a of the payload
//
// Record tags: 1 metadata, 2 artifact kind, 3 tag set, 4 emission scorer,
// 5 transitions, 6 embedding table. See README for the field layout.
inline constexpr std::uint32_t kFormatVersion = 1;

class ModelFormatError : public DataError {
 public:
  enum class Kind { kIo, kBadMagic, kVersion, kTruncated, kIntegrity, kDimension };

  ModelFormatError(Kind kind, const std::string& what) : DataError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class ArtifactKind : std::uint8_t { kModel = 0, kEmbeddings = 1 };

struct ModelArtifact {
  std::uint32_t format_version = kFormatVersion;
  ArtifactKind kind = ArtifactKind::kModel;
  std::optional<CrfModel> model;
  // The embedding table: the artifact itself for kEmbeddings, or the table
  // an embedding-variant model scores with.
  std::shared_ptr<const EmbeddingTable> embeddings;
  std::map<std::string, std::string> metadata;
};

std::string serialize(const ModelArtifact& artifact);
ModelArtifact deserialize(std::string_view bytes);

void save_model(const CrfModel& model, const std::filesystem::path& path,
                const std::map<std::string, std::string>& metadata = {});
void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path,
                     const std::map<std::string, std::string>& metadata = {});
ModelArtifact load_model(const std::filesystem::path& path);

}  // namespace seedner
