#include "seedner/bootstrap.hpp"

#include <algorithm>

#include "seedner/error.hpp"
#include "seedner/parallel.hpp"

namespace seedner {

void BootstrapConfig::check() const {
  if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("theta must be in [0, 1]");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  train.check();
  if (early_stop && early_stop->patience == 0) throw ConfigError("patience must be >= 1");
}

TagSequence relabel(const TagSequence& tags, const std::vector<double>& confidence, double theta,
                    const TagSet& tagset) {
  if (tags.size() != confidence.size())
    throw ConfigError("relabel: tag and confidence lengths differ");
  TagSequence out = tags;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (confidence[i] < theta) out[i] = TagSet::kOutside;
  return repair(std::move(out), tagset);
}

std::size_t count_non_outside(const std::vector<TagSequence>& tags) {
  std::size_t n = 0;
  for (const auto& seq : tags)
    n += static_cast<std::size_t>(
        std::count_if(seq.begin(), seq.end(), [](Tag t) { return t != TagSet::kOutside; }));
  return n;
}

Scores evaluate(const CrfModel& model, const LabeledDataset& data, std::size_t threads) {
  std::vector<Sentence> sentences;
  std::vector<TagSequence> gold;
  sentences.reserve(data.size());
  gold.reserve(data.size());
  for (const auto& item : data.items) {
    sentences.push_back(item.sentence);
    gold.push_back(item.tags);
  }
  return micro_prf(gold, predict_all(model, sentences, threads), model.tagset());
}

WeakDataset assign_weak_labels(const LabeledDataset& seed, const UnlabeledCorpus& corpus,
                               const CrfModel& model, double theta, ConfidenceMode mode,
                               std::size_t threads) {
  std::vector<TagSequence> weak(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    const auto p = predict_with_confidence(model, corpus.sentences[i], mode);
    weak[i] = relabel(p.tags, p.confidence, theta, model.tagset());
  });

  WeakDataset out;
  out.tagset = seed.tagset;
  out.items.reserve(seed.size() + corpus.size());
  for (const auto& item : seed.items) out.items.push_back({item, Provenance::kSeed});
  for (std::size_t i = 0; i < corpus.size(); ++i)
    out.items.push_back({{corpus.sentences[i], std::move(weak[i])}, Provenance::kWeak});
  return out;
}

namespace {

IterationRecord record(std::size_t index, const CrfModel& model, const BootstrapConfig& config,
                       std::size_t weak_non_o, std::size_t training_size) {
  IterationRecord r;
  r.index = index;
  r.weak_non_o = weak_non_o;
  r.training_size = training_size;
  r.model_ref = "M" + std::to_string(index);
  if (config.dev_set) r.dev = evaluate(model, *config.dev_set, config.threads);
  if (config.test_set) r.test = evaluate(model, *config.test_set, config.threads);
  return r;
}

}  // namespace

BootstrapResult bootstrap_run(const LabeledDataset& seed, const UnlabeledCorpus& corpus,
                              const BootstrapConfig& config, const CrfModel& prototype) {
  config.check();
  if (seed.empty()) throw ConfigError("bootstrap needs a non-empty seed set");
  if (!(seed.tagset == prototype.tagset()))
    throw ConfigError("seed tag set differs from the model tag set");

  auto train_step = [&](std::size_t iteration, const std::vector<LabeledSentence>& data,
                        const CrfModel& start) {
    try {
      return train(data, config.train, start).model;
    } catch (const NumericalError& e) {
      throw NumericalError("bootstrap iteration " + std::to_string(iteration) + ": " + e.what());
    }
  };

  BootstrapResult result;
  result.model = train_step(0, seed.items, prototype);
  result.history.push_back(record(0, result.model, config, 0, seed.size()));

  double best_dev = result.history.back().dev ? result.history.back().dev->f1 : 0.0;
  std::size_t stale = 0;
  const bool early = config.early_stop && config.dev_set;

  for (std::size_t i = 1; i <= config.max_iterations; ++i) {
    const WeakDataset augmented = assign_weak_labels(seed, corpus, result.model, config.theta,
                                                     config.confidence_mode, config.threads);
    std::size_t weak_non_o = 0;
    for (const auto& item : augmented.items)
      if (item.provenance == Provenance::kWeak)
        weak_non_o += count_non_outside({item.example.tags});

    const CrfModel& start =
        config.retrain_from == RetrainFrom::kScratch ? prototype : result.model;
    result.model = train_step(i, augmented.examples(), start);
    result.history.push_back(record(i, result.model, config, weak_non_o, augmented.size()));

    if (early) {
      const double f1 = result.history.back().dev->f1;
      if (f1 > best_dev + config.early_stop->min_delta) {
        best_dev = f1;
        stale = 0;
      } else if (++stale >= config.early_stop->patience) {
        break;
      }
    }
  }
  return result;
}

std::vector<ThetaPoint> sweep_theta(const LabeledDataset& seed, const UnlabeledCorpus& corpus,
                                    const LabeledDataset& dev, const std::vector<double>& thetas,
                                    BootstrapConfig config, const CrfModel& prototype) {
  if (thetas.empty()) throw ConfigError("theta sweep needs at least one threshold");
  config.dev_set = dev;
  std::vector<ThetaPoint> curve;
  curve.reserve(thetas.size());
  for (double theta : thetas) {
    config.theta = theta;
    const auto run = bootstrap_run(seed, corpus, config, prototype);
    std::vector<Scores> dev_history;
    for (const auto& r : run.history) dev_history.push_back(*r.dev);
    curve.push_back({theta, average_last(dev_history, 5)});
  }
  return curve;
}

}  // namespace seedner
