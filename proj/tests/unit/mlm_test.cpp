#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "seedner/corpus.hpp"
#include "seedner/error.hpp"
#include "seedner/mlm.hpp"

namespace seedner {
namespace {

UnlabeledCorpus synthetic_text(std::size_t n, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.sentences = n;
  spec.rng_seed = seed;
  return strip_labels(generate_synthetic(spec));
}

TEST(Masking, RateIsRespected) {
  std::mt19937_64 rng(31);
  const std::vector<int> ids(100, 5);
  std::size_t masked = 0;
  for (int s = 0; s < 100; ++s) {
    const auto ex = mask_sequence(ids, 0.15, rng);
    masked += ex.targets.size();
    for (const auto& [pos, original] : ex.targets) {
      EXPECT_EQ(ex.tokens[pos], EmbeddingTable::kMask);
      EXPECT_EQ(original, 5);
    }
  }
  EXPECT_NEAR(static_cast<double>(masked) / 10000.0, 0.15, 0.01);
}

TEST(Masking, AtLeastOneTarget) {
  std::mt19937_64 rng(32);
  const std::vector<int> one{7};
  for (int s = 0; s < 50; ++s) {
    const auto ex = mask_sequence(one, 0.01, rng);
    ASSERT_EQ(ex.targets.size(), 1u);
    EXPECT_EQ(ex.tokens[0], EmbeddingTable::kMask);
  }
  EXPECT_THROW(mask_sequence(std::vector<int>{}, 0.15, rng), ConfigError);
}

TEST(EmbeddingTable, CreateAndLookup) {
  const auto t = EmbeddingTable::create({"a", "b"}, 4, 1);
  EXPECT_EQ(t.vocab_size(), 4u);
  EXPECT_EQ(t.index_of("b"), 3);
  EXPECT_EQ(t.index_of("zz"), EmbeddingTable::kUnk);
  EXPECT_THROW(EmbeddingTable::create({"a", "a"}, 4, 1), DataError);
  EXPECT_THROW(EmbeddingTable::create({"[MASK]"}, 4, 1), DataError);
  EXPECT_EQ(t, EmbeddingTable::create({"a", "b"}, 4, 1));
  EXPECT_EQ(t.encode(Sentence({"a", "b", "a"}), 2), (std::vector<int>{2, 3}));
}

TEST(MlmLoss, ZeroPredictorIsUniform) {
  std::mt19937_64 rng(33);
  const auto t = EmbeddingTable::create({"a", "b", "c", "d"}, 3, 2);
  const auto ex = mask_sequence(t.encode(Sentence({"a", "b", "c"})), 0.5, rng);
  EXPECT_NEAR(mlm_loss(t, {ex}, 2, false).loss, std::log(6.0), 1e-12);
}

TEST(MlmLoss, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 4; ++trial) {
    auto table = *testing::random_table(rng, 6, 3);
    std::vector<MaskedExample> batch;
    for (const auto& s : testing::random_sentences(rng, 3, 6, 8))
      batch.push_back(mask_sequence(table.encode(s), 0.3, rng));
    const auto r = mlm_loss(table, batch, 2, true);
    const auto check = [&](std::vector<double>& params, const std::vector<double>& grad) {
      for (std::size_t j = 0; j < params.size(); ++j) {
        const double x0 = params[j];
        const double fd = testing::central_difference(
            [&](double x) {
              params[j] = x;
              return mlm_loss(table, batch, 2, false).loss;
            },
            x0, 1e-5);
        params[j] = x0;
        if (std::abs(fd) < 1e-7 && std::abs(grad[j]) < 1e-7) continue;
        EXPECT_LT(testing::relative_error(fd, grad[j]), 1e-4) << j;
      }
    };
    check(table.vectors().data(), r.gradient.vectors.data());
    check(table.output().data(), r.gradient.output.data());
    check(table.output_bias(), r.gradient.output_bias);
  }
}

TEST(Adapt, ZeroEpochsIsIdentity) {
  const auto text = synthetic_text(50, 3);
  const auto t = EmbeddingTable::create(corpus_vocabulary(text), 8, 4);
  AdaptConfig cfg;
  cfg.epochs = 0;
  const auto r = adapt(t, text, cfg);
  EXPECT_EQ(r.table, t);
  EXPECT_EQ(r.heldout_loss.size(), 1u);
}

TEST(Adapt, HeldoutLossDecreases) {
  const auto text = synthetic_text(200, 5);
  const auto t = EmbeddingTable::create(corpus_vocabulary(text), 16, 6);
  AdaptConfig cfg;
  cfg.epochs = 5;
  cfg.learning_rate = 0.1;
  const auto r = adapt(t, text, cfg);
  ASSERT_EQ(r.heldout_loss.size(), 6u);
  EXPECT_LT(r.heldout_loss.back(), r.heldout_loss.front());
}

TEST(Adapt, DeterministicAndOrderIndependent) {
  const auto text = synthetic_text(60, 7);
  const auto t = EmbeddingTable::create(corpus_vocabulary(text), 8, 8);
  AdaptConfig cfg;
  cfg.epochs = 2;
  cfg.heldout_fraction = 0.0;
  const auto a = adapt(t, text, cfg);
  const auto b = adapt(t, text, cfg);
  EXPECT_EQ(a.table, b.table);
  EXPECT_EQ(a.heldout_loss, b.heldout_loss);
  auto reversed = text;
  std::reverse(reversed.sentences.begin(), reversed.sentences.end());
  EXPECT_EQ(adapt(t, reversed, cfg).table, a.table);
}

TEST(Adapt, RejectsBadConfig) {
  const auto text = synthetic_text(10, 9);
  const auto t = EmbeddingTable::create(corpus_vocabulary(text), 4, 1);
  AdaptConfig cfg;
  cfg.mask_rate = 0.0;
  EXPECT_THROW(adapt(t, text, cfg), ConfigError);
  cfg = {};
  EXPECT_THROW(adapt(t, UnlabeledCorpus{}, cfg), ConfigError);
}

}  // namespace
}  // namespace seedner
