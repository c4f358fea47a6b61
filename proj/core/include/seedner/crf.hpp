#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "seedner/corpus.hpp"
#include "seedner/emissions.hpp"
#include "seedner/matrix.hpp"
#include "seedner/tagscheme.hpp"

namespace seedner {

// (K+2) x (K+2) transition log-scores, indexed [from][to]. State K is START
// and K+1 is END: row START holds the scores of the first tag, column END the
// scores of the last tag. Entries into START or out of END are never read.
class TransitionModel {
 public:
  TransitionModel() = default;
  explicit TransitionModel(std::size_t num_tags) : k_(num_tags), a_(num_tags + 2, num_tags + 2) {}
  // Throws DataError unless `a` is square with side num_tags + 2.
  TransitionModel(std::size_t num_tags, Matrix a);

  std::size_t num_tags() const { return k_; }
  std::size_t start_state() const { return k_; }
  std::size_t end_state() const { return k_ + 1; }

  double transition(std::size_t from, std::size_t to) const { return a_(from, to); }
  double start(std::size_t to) const { return a_(k_, to); }
  double end(std::size_t from) const { return a_(from, k_ + 1); }

  double& operator()(std::size_t from, std::size_t to) { return a_(from, to); }
  double operator()(std::size_t from, std::size_t to) const { return a_(from, to); }

  const Matrix& matrix() const { return a_; }
  Matrix& matrix() { return a_; }

  friend bool operator==(const TransitionModel&, const TransitionModel&) = default;

 private:
  std::size_t k_ = 0;
  Matrix a_;
};

// Emission scorer + transitions over one tag set.
class CrfModel {
 public:
  CrfModel() = default;
  // Throws DataError on inconsistent dimensions.
  CrfModel(EmissionScorer scorer, TransitionModel transitions, TagSet tagset);
  static CrfModel blank(EmissionScorer scorer, TagSet tagset);

  const EmissionScorer& scorer() const { return scorer_; }
  EmissionScorer& scorer() { return scorer_; }
  const TransitionModel& transitions() const { return trans_; }
  TransitionModel& transitions() { return trans_; }
  const TagSet& tagset() const { return tagset_; }
  std::size_t num_tags() const { return tagset_.size(); }

  EmissionMatrix emissions(const Sentence& s) const { return scorer_.score(s); }

  // Flat parameter view: emission weights (row-major), then transitions.
  std::size_t parameter_count() const;
  double parameter(std::size_t j) const;
  void set_parameter(std::size_t j, double value);

 private:
  EmissionScorer scorer_;
  TransitionModel trans_;
  TagSet tagset_;
};

bool same_parameters(const CrfModel& a, const CrfModel& b);

// Unnormalized score of a tag path including START and END transitions.
double path_score(const TagSequence& y, const EmissionMatrix& e, const TransitionModel& t);

// log Z(X) by the forward recursion.
double log_partition(const EmissionMatrix& e, const TransitionModel& t);

// log p(y | X) = path_score - log Z. Throws ConfigError on a bad tag or length.
double sequence_log_prob(const TagSequence& y, const EmissionMatrix& e, const TransitionModel& t);

struct ViterbiResult {
  TagSequence tags;
  double score = 0.0;
};

// Best path; ties go to the lowest tag index at every backpointer.
ViterbiResult viterbi(const EmissionMatrix& e, const TransitionModel& t);

// n x K posterior tag probabilities by forward-backward.
Matrix marginals(const EmissionMatrix& e, const TransitionModel& t);

struct NllResult {
  double loss = 0.0;
  std::vector<double> gradient;  // indexed like CrfModel::parameter
};

// loss = -sum log p(y|X) + l2/2 |theta|^2, with its exact gradient.
NllResult nll_and_gradient(std::span<const LabeledSentence> batch, const CrfModel& model,
                           double l2);

struct TrainConfig {
  std::size_t epochs = 10;
  double learning_rate = 0.1;
  double l2 = 1e-4;
  std::uint64_t rng_seed = 1;
  bool shuffle = true;

  void check() const;  // throws ConfigError
};

// 30 epochs up to a 10% seed, 20 up to 30%, 10 above.
std::size_t default_epochs(double seed_ratio);

struct TrainResult {
  CrfModel model;
  // Full objective (NLL + L2) over the training set after each epoch.
  std::vector<double> epoch_loss;
};

// Per-sentence AdaGrad on the NLL, starting from `init`. L2 is applied to the
// parameters a sentence touches. Throws NumericalError on a non-finite loss.
TrainResult train(std::span<const LabeledSentence> data, const TrainConfig& config,
                  CrfModel init);

enum class ConfidenceMode : std::uint8_t { kSoftmax, kMarginal };

struct Prediction {
  TagSequence tags;
  std::vector<double> confidence;
};

// Viterbi tags plus per-token confidence: the emission softmax probability of
// the chosen tag (kSoftmax) or its CRF posterior marginal (kMarginal).
Prediction predict_with_confidence(const CrfModel& model, const Sentence& sentence,
                                   ConfidenceMode mode = ConfidenceMode::kSoftmax);

TagSequence predict(const CrfModel& model, const Sentence& sentence);

std::vector<TagSequence> predict_all(const CrfModel& model, const std::vector<Sentence>& sentences,
                                     std::size_t threads = 1);

}  // namespace seedner
