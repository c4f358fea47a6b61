#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "seedner/bootstrap.hpp"
#include "seedner/error.hpp"

namespace seedner {
namespace {

const TagSet kTags({"PER", "LOC"});

TEST(Relabel, Examples) {
  const Tag B = kTags.begin_tag(0), I = kTags.inside_tag(0);
  EXPECT_EQ(relabel({B, I, 0}, {0.9, 0.4, 0.99}, 0.7, kTags), (TagSequence{B, 0, 0}));
  EXPECT_EQ(relabel({B, I, I}, {0.5, 0.9, 0.9}, 0.7, kTags), (TagSequence{0, B, I}));
  EXPECT_EQ(relabel({B, I}, {0.0, 0.0}, 0.0, kTags), (TagSequence{B, I}));
  EXPECT_EQ(relabel({B, I}, {0.99, 0.99}, 1.0, kTags), (TagSequence{0, 0}));
  EXPECT_THROW(relabel({B}, {0.5, 0.5}, 0.5, kTags), ConfigError);
}

TEST(Relabel, NonOutsideCountIsMonotoneInTheta) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<TagSequence> tags;
  std::vector<std::vector<double>> conf;
  for (int s = 0; s < 100; ++s) {
    tags.push_back(repair(testing::random_tags(rng, 1 + rng() % 10, kTags.size()), kTags));
    std::vector<double> c(tags.back().size());
    for (double& x : c) x = u(rng);
    conf.push_back(c);
  }
  std::size_t previous = count_non_outside(tags);
  for (int step = 0; step <= 10; ++step) {
    std::vector<TagSequence> out;
    for (std::size_t s = 0; s < tags.size(); ++s)
      out.push_back(relabel(tags[s], conf[s], step / 10.0, kTags));
    const std::size_t now = count_non_outside(out);
    EXPECT_LE(now, previous);
    if (step == 0) EXPECT_EQ(out, tags);
    previous = now;
  }
}

CrfModel prototype(const TagSet& tags) {
  return CrfModel::blank(EmissionScorer::features(tags.size(), 12), tags);
}

BootstrapConfig small_config(std::size_t iterations) {
  BootstrapConfig cfg;
  cfg.max_iterations = iterations;
  cfg.train.epochs = 3;
  return cfg;
}

TEST(Bootstrap, EmptyCorpusGivesConstantHistory) {
  const auto seed = testing::separable_fixture(15, 1);
  auto cfg = small_config(3);
  cfg.dev_set = testing::separable_fixture(10, 2);
  const auto r = bootstrap_run(seed, {}, cfg, prototype(seed.tagset));
  ASSERT_EQ(r.history.size(), 4u);
  for (const auto& h : r.history) {
    EXPECT_EQ(h.dev, r.history.front().dev);
    EXPECT_EQ(h.weak_non_o, 0u);
    EXPECT_EQ(h.training_size, 15u);
  }
}

TEST(Bootstrap, HistoryShape) {
  const auto all = testing::separable_fixture(40, 3);
  const auto split = split_seed(all, 0.25, 4);
  auto cfg = small_config(1);
  cfg.test_set = testing::separable_fixture(10, 5);
  const auto r = bootstrap_run(split.seed, split.remainder, cfg, prototype(all.tagset));
  ASSERT_EQ(r.history.size(), 2u);
  EXPECT_EQ(r.history[0].index, 0u);
  EXPECT_EQ(r.history[1].training_size, 40u);
  EXPECT_TRUE(r.history[1].test.has_value());
  EXPECT_FALSE(r.history[1].dev.has_value());
  EXPECT_EQ(r.history[1].model_ref, "M1");
}

TEST(Bootstrap, EarlyStopNeedsPatience) {
  const auto seed = testing::separable_fixture(15, 6);
  auto cfg = small_config(10);
  cfg.dev_set = testing::separable_fixture(10, 7);
  cfg.early_stop = EarlyStop{2, 0.001};
  // With no corpus nothing changes, so the run stops after `patience` iterations.
  const auto r = bootstrap_run(seed, {}, cfg, prototype(seed.tagset));
  EXPECT_EQ(r.history.size(), 3u);
  cfg.early_stop->patience = 0;
  EXPECT_THROW(bootstrap_run(seed, {}, cfg, prototype(seed.tagset)), ConfigError);
}

TEST(Bootstrap, RejectsBadInputs) {
  const auto seed = testing::separable_fixture(5, 8);
  auto cfg = small_config(1);
  cfg.theta = 1.5;
  EXPECT_THROW(bootstrap_run(seed, {}, cfg, prototype(seed.tagset)), ConfigError);
  cfg = small_config(0);
  EXPECT_THROW(bootstrap_run(seed, {}, cfg, prototype(seed.tagset)), ConfigError);
  cfg = small_config(1);
  EXPECT_THROW(bootstrap_run(LabeledDataset{seed.tagset, {}}, {}, cfg, prototype(seed.tagset)),
               ConfigError);
  EXPECT_THROW(bootstrap_run(seed, {}, cfg, prototype(TagSet({"X"}))), ConfigError);
}

TEST(Bootstrap, WeakLabelsAtThetaZeroAreViterbiPaths) {
  std::mt19937_64 rng(42);
  const auto model = testing::random_feature_model(rng, kTags, 6, 1.0);
  UnlabeledCorpus corpus{testing::random_sentences(rng, 20, 6)};
  const LabeledDataset seed{kTags, {}};
  const auto weak = assign_weak_labels(seed, corpus, model, 0.0, ConfidenceMode::kSoftmax, 2);
  ASSERT_EQ(weak.size(), 20u);
  for (std::size_t i = 0; i < 20; ++i)
    EXPECT_EQ(weak.items[i].example.tags, repair(predict(model, corpus.sentences[i]), kTags));
}

TEST(Sweep, DeterministicFourPoints) {
  const auto all = testing::separable_fixture(30, 9);
  const auto split = split_seed(all, 0.3, 10);
  const auto dev = testing::separable_fixture(10, 11);
  const std::vector<double> thetas{0.0, 0.3, 0.6, 0.9};
  const auto cfg = small_config(2);
  const auto a = sweep_theta(split.seed, split.remainder, dev, thetas, cfg, prototype(all.tagset));
  const auto b = sweep_theta(split.seed, split.remainder, dev, thetas, cfg, prototype(all.tagset));
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(a[i].theta, thetas[i]);
    EXPECT_EQ(a[i].dev, b[i].dev);
  }
  EXPECT_THROW(sweep_theta(split.seed, split.remainder, dev, {}, cfg, prototype(all.tagset)),
               ConfigError);
}

}  // namespace
}  // namespace seedner
