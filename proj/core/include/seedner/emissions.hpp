#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "seedner/corpus.hpp"
#include "seedner/matrix.hpp"
#include "seedner/mlm.hpp"

namespace seedner {

// Hashed binary features of one token; indices strictly increasing.
struct FeatureVector {
  std::vector<std::uint32_t> indices;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Character class pattern: upper -> 'A', lower -> 'a', digit -> '0', other
// ASCII kept as is, each non-ASCII code point -> 'x'. "EU" -> "AA".
std::string word_shape(std::string_view word);

// Feature template for token i:
//   bias, w=<lower>, shape=<shape>, p1..p3=<prefix>, s1..s3=<suffix>,
//   prev=<lower> / bos, next=<lower> / eos.
// Affixes count code points and are emitted only up to the word length.
std::vector<std::string> feature_names(const Sentence& sentence, std::size_t i);

class FeatureExtractor {
 public:
  static constexpr unsigned kDefaultHashBits = 18;

  explicit FeatureExtractor(unsigned hash_bits = kDefaultHashBits);

  unsigned hash_bits() const { return bits_; }
  std::size_t hash_space() const { return std::size_t{1} << bits_; }
  std::uint32_t bucket(std::string_view feature) const;

  FeatureVector extract(const Sentence& sentence, std::size_t i) const;

 private:
  unsigned bits_;
};

inline FeatureVector extract_features(const Sentence& sentence, std::size_t i,
                                      const FeatureExtractor& extractor = FeatureExtractor{}) {
  return extractor.extract(sentence, i);
}

// Pre-softmax scores and their row softmax, both n x K.
struct EmissionMatrix {
  Matrix scores;
  Matrix probs;

  std::size_t length() const { return scores.rows(); }
  std::size_t num_tags() const { return scores.cols(); }
};

// Row-wise softmax with max subtraction. Throws NumericalError on non-finite input.
Matrix softmax_probs(const Matrix& scores);
EmissionMatrix make_emissions(Matrix scores);

// One entry of a sparse token representation.
struct InputEntry {
  std::uint32_t index;
  double value;
};
using TokenInput = std::vector<InputEntry>;

enum class ScorerKind : std::uint8_t { kFeatures = 0, kEmbedding = 1 };

// Linear map from a token representation to K tag scores:
// scores[i][k] = sum_j input_i[j] * weights[j][k].
//
// kFeatures: the representation is the hashed feature vector (values 1).
// kEmbedding: [e_i, mean of e_j for 0 < |j - i| <= radius, 1] over a shared
// embedding table, so input_dim = 2d + 1.
class EmissionScorer {
 public:
  EmissionScorer() = default;

  static EmissionScorer features(std::size_t num_tags,
                                 unsigned hash_bits = FeatureExtractor::kDefaultHashBits);
  static EmissionScorer embedding(std::size_t num_tags,
                                  std::shared_ptr<const EmbeddingTable> table,
                                  std::size_t context_radius = 1);

  ScorerKind kind() const { return kind_; }
  std::size_t num_tags() const { return weights_.cols(); }
  std::size_t input_dim() const { return weights_.rows(); }
  unsigned hash_bits() const { return extractor_.hash_bits(); }
  std::size_t context_radius() const { return radius_; }
  const std::shared_ptr<const EmbeddingTable>& table() const { return table_; }

  const Matrix& weights() const { return weights_; }
  Matrix& weights() { return weights_; }
  // Throws DataError if the shape does not match input_dim() x num_tags().
  void set_weights(Matrix w);

  // Same weights over a different embedding table of equal dimension.
  EmissionScorer with_table(std::shared_ptr<const EmbeddingTable> table) const;

  std::vector<TokenInput> inputs(const Sentence& sentence) const;
  EmissionMatrix score(const std::vector<TokenInput>& inputs) const;
  EmissionMatrix score(const Sentence& sentence) const { return score(inputs(sentence)); }

 private:
  ScorerKind kind_ = ScorerKind::kFeatures;
  FeatureExtractor extractor_;
  std::shared_ptr<const EmbeddingTable> table_;
  std::size_t radius_ = 1;
  Matrix weights_;
};

inline EmissionMatrix emission_scores(const EmissionScorer& scorer, const Sentence& sentence) {
  return scorer.score(sentence);
}

}  // namespace seedner
