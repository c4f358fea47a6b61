#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seedner/corpus.hpp"
#include "seedner/matrix.hpp"

namespace seedner {

// Word embeddings plus the log-bilinear masked-token predictor trained with
// them. Row 0 is [UNK], row 1 is [MASK].
class EmbeddingTable {
 public:
  static constexpr int kUnk = 0;
  static constexpr int kMask = 1;
  static constexpr const char* kUnkToken = "[UNK]";
  static constexpr const char* kMaskToken = "[MASK]";

  EmbeddingTable() = default;

  // Random input vectors in [-scale, scale], zero predictor. `words` must not
  // contain the special tokens; duplicates are rejected.
  static EmbeddingTable create(const std::vector<std::string>& words, std::size_t dim,
                               std::uint64_t rng_seed, double scale = 0.5);

  // Rebuilds from serialized parts; checks shapes and finiteness.
  static EmbeddingTable from_parts(std::vector<std::string> vocab, Matrix vectors,
                                   Matrix output, std::vector<double> output_bias);

  std::size_t vocab_size() const { return vocab_.size(); }
  std::size_t dim() const { return vectors_.cols(); }
  const std::vector<std::string>& vocab() const { return vocab_; }

  int index_of(const std::string& token) const;  // kUnk when absent
  std::vector<int> encode(const Sentence& sentence, std::size_t max_length = 0) const;

  const Matrix& vectors() const { return vectors_; }
  const Matrix& output() const { return output_; }
  const std::vector<double>& output_bias() const { return bias_; }
  Matrix& vectors() { return vectors_; }
  Matrix& output() { return output_; }
  std::vector<double>& output_bias() { return bias_; }

  friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
    return a.vocab_ == b.vocab_ && a.vectors_ == b.vectors_ && a.output_ == b.output_ &&
           a.bias_ == b.bias_;
  }

 private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> index_;
  Matrix vectors_;  // V x d input embeddings
  Matrix output_;   // V x d output projection
  std::vector<double> bias_;
};

// Sorted distinct tokens of a corpus.
std::vector<std::string> corpus_vocabulary(const UnlabeledCorpus& corpus);

struct MaskedExample {
  std::vector<int> tokens;                   // masked positions hold kMask
  std::vector<std::pair<std::size_t, int>> targets;  // (position, original id), ascending
};

struct AdaptConfig {
  double mask_rate = 0.15;
  std::size_t epochs = 1;
  double learning_rate = 0.05;
  std::size_t context_radius = 2;
  std::uint64_t rng_seed = 1;
  std::size_t max_length = 64;
  std::size_t batch_size = 8;
  double heldout_fraction = 0.1;
  bool shuffle = false;

  void check() const;  // throws ConfigError
};

// Masks each position independently with probability mask_rate; if none is
// selected one position is drawn uniformly. Throws on an empty sequence.
MaskedExample mask_sequence(std::span<const int> tokens, double mask_rate, std::mt19937_64& rng);

struct MlmGradient {
  Matrix vectors;
  Matrix output;
  std::vector<double> output_bias;
};

struct MlmLoss {
  double loss = 0.0;  // mean cross-entropy per masked target
  std::size_t targets = 0;
  MlmGradient gradient;  // empty unless requested
};

// Context vector of a target is the mean embedding of unmasked tokens within
// `context_radius`; logits = output * context + bias.
MlmLoss mlm_loss(const EmbeddingTable& table, const std::vector<MaskedExample>& batch,
                 std::size_t context_radius, bool with_gradient = true);

struct AdaptResult {
  EmbeddingTable table;
  // Held-out MLM loss before training (index 0) and after each epoch.
  std::vector<double> heldout_loss;
};

// MLM training of `table` on `corpus`. The input table is not modified.
// Sentences are visited in a content-sorted order (shuffled per epoch when
// config.shuffle), and masks are keyed by content, so the result does not
// depend on the order of sentences in `corpus`.
AdaptResult adapt(const EmbeddingTable& table, const UnlabeledCorpus& corpus,
                  const AdaptConfig& config);

// Same, with an explicit held-out corpus instead of a split of `corpus`.
AdaptResult adapt(const EmbeddingTable& table, const UnlabeledCorpus& corpus,
                  const UnlabeledCorpus& heldout, const AdaptConfig& config);

// Mean held-out MLM loss with masks drawn deterministically from `rng_seed`.
double heldout_mlm_loss(const EmbeddingTable& table, const UnlabeledCorpus& heldout,
                        const AdaptConfig& config);

}  // namespace seedner
