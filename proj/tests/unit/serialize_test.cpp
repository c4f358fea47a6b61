#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "seedner/serialize.hpp"

namespace seedner {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("seedner_serialize_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

using Serialize = TempDir;

ModelFormatError::Kind kind_of(std::string_view bytes) {
  try {
    deserialize(bytes);
  } catch (const ModelFormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "deserialize accepted corrupt bytes";
  return ModelFormatError::Kind::kIo;
}

TEST_F(Serialize, FeatureModelRoundTrip) {
  std::mt19937_64 rng(51);
  const TagSet tags({"PER", "LOC"});
  const auto model = testing::random_feature_model(rng, tags, 8);
  const auto path = dir_ / "m.bin";
  save_model(model, path, {{"note", "x"}});
  const auto back = load_model(path);
  ASSERT_TRUE(back.model.has_value());
  EXPECT_EQ(back.kind, ArtifactKind::kModel);
  EXPECT_TRUE(same_parameters(model, *back.model));
  EXPECT_EQ(back.model->tagset(), tags);
  EXPECT_EQ(back.metadata.at("note"), "x");
  for (const auto& s : testing::random_sentences(rng, 100, 10))
    EXPECT_EQ(predict(*back.model, s), predict(model, s));
}

TEST_F(Serialize, EmbeddingModelCarriesItsTable) {
  std::mt19937_64 rng(52);
  const TagSet tags({"PER"});
  auto table = testing::random_table(rng, 10, 4);
  auto model = CrfModel::blank(EmissionScorer::embedding(tags.size(), table, 2), tags);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t j = 0; j < model.parameter_count(); ++j) model.set_parameter(j, u(rng));
  const auto back = deserialize(serialize({kFormatVersion, ArtifactKind::kModel, model, table, {}}));
  ASSERT_TRUE(back.model.has_value());
  EXPECT_EQ(*back.model->scorer().table(), *table);
  EXPECT_EQ(back.model->scorer().context_radius(), 2u);
  for (const auto& s : testing::random_sentences(rng, 30, 6, 12))
    EXPECT_EQ(back.model->emissions(s).scores, model.emissions(s).scores);
}

TEST_F(Serialize, EmbeddingsArtifact) {
  std::mt19937_64 rng(53);
  const auto table = testing::random_table(rng, 7, 3);
  const auto path = dir_ / "e.bin";
  save_embeddings(*table, path);
  const auto back = load_model(path);
  EXPECT_EQ(back.kind, ArtifactKind::kEmbeddings);
  EXPECT_FALSE(back.model.has_value());
  EXPECT_EQ(*back.embeddings, *table);
}

TEST_F(Serialize, CorruptionIsReported) {
  std::mt19937_64 rng(54);
  const auto bytes = serialize(
      {kFormatVersion, ArtifactKind::kModel, testing::random_feature_model(rng, TagSet({"A"}), 4),
       nullptr, {}});
  EXPECT_NO_THROW(deserialize(bytes));

  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_EQ(kind_of(bad), ModelFormatError::Kind::kBadMagic);

  bad = bytes;
  const std::uint32_t next = kFormatVersion + 1;
  std::memcpy(bad.data() + 4, &next, 4);
  EXPECT_EQ(kind_of(bad), ModelFormatError::Kind::kVersion);

  bad = bytes;
  bad.back() = static_cast<char>(bad.back() ^ 0x5a);
  EXPECT_EQ(kind_of(bad), ModelFormatError::Kind::kIntegrity);

  bad = bytes;
  bad[bytes.size() / 2] = static_cast<char>(bad[bytes.size() / 2] ^ 0x01);
  EXPECT_EQ(kind_of(bad), ModelFormatError::Kind::kIntegrity);

  EXPECT_EQ(kind_of(bytes.substr(0, bytes.size() - 3)), ModelFormatError::Kind::kTruncated);
  EXPECT_EQ(kind_of(bytes.substr(0, 6)), ModelFormatError::Kind::kTruncated);
}

TEST_F(Serialize, MissingFileIsAnIoError) {
  try {
    load_model(dir_ / "absent.bin");
    FAIL();
  } catch (const ModelFormatError& e) {
    EXPECT_EQ(e.kind(), ModelFormatError::Kind::kIo);
  }
}

}  // namespace
}  // namespace seedner
