#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seedner/corpus.hpp"
#include "seedner/crf.hpp"
#include "seedner/metrics.hpp"

namespace seedner {

enum class RetrainFrom : std::uint8_t { kScratch, kPrevious };

struct EarlyStop {
  std::size_t patience = 3;
  double min_delta = 0.001;  // in F1 units (0.1 F1 points)
};

struct BootstrapConfig {
  double theta = 0.7;
  std::size_t max_iterations = 10;
  TrainConfig train;
  ConfidenceMode confidence_mode = ConfidenceMode::kSoftmax;
  RetrainFrom retrain_from = RetrainFrom::kScratch;
  // Only consulted when a dev set is supplied.
  std::optional<EarlyStop> early_stop;
  std::optional<LabeledDataset> dev_set;
  std::optional<LabeledDataset> test_set;
  std::size_t threads = 1;

  void check() const;  // throws ConfigError
};

struct IterationRecord {
  std::size_t index = 0;  // 0 is the seed-only model
  std::optional<Scores> dev;
  std::optional<Scores> test;
  std::size_t weak_non_o = 0;  // non-O weak tags the model was trained on
  std::size_t training_size = 0;
  std::string model_ref;
};

struct BootstrapResult {
  CrfModel model;  // last trained model
  std::vector<IterationRecord> history;
};

// Replaces tags whose confidence is below theta with O, then repairs stray
// I-tags. Throws ConfigError if the lengths differ.
TagSequence relabel(const TagSequence& tags, const std::vector<double>& confidence, double theta,
                    const TagSet& tagset);

std::size_t count_non_outside(const std::vector<TagSequence>& tags);

// Seed data plus the corpus labelled by `model` and filtered at theta.
WeakDataset assign_weak_labels(const LabeledDataset& seed, const UnlabeledCorpus& corpus,
                               const CrfModel& model, double theta, ConfidenceMode mode,
                               std::size_t threads = 1);

// Self-training: M_0 on the seed set, then for i = 1..K label the corpus with
// M_{i-1}, drop low-confidence tags and train M_i on seed + weak data.
// `prototype` supplies the scorer configuration; its weights are the
// starting point for every from-scratch model.
BootstrapResult bootstrap_run(const LabeledDataset& seed, const UnlabeledCorpus& corpus,
                              const BootstrapConfig& config, const CrfModel& prototype);

struct ThetaPoint {
  double theta = 0.0;
  Scores dev;  // mean of the last five iterations on the dev set
};

std::vector<ThetaPoint> sweep_theta(const LabeledDataset& seed, const UnlabeledCorpus& corpus,
                                    const LabeledDataset& dev, const std::vector<double>& thetas,
                                    BootstrapConfig config, const CrfModel& prototype);

// Scores of `model` on a labelled set.
Scores evaluate(const CrfModel& model, const LabeledDataset& data, std::size_t threads = 1);

}  // namespace seedner
