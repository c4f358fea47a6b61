#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seedner/tagscheme.hpp"

namespace seedner {

// A pre-tokenized sentence. Tokens are non-empty and free of whitespace.
class Sentence {
 public:
  Sentence() = default;
  explicit Sentence(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  friend auto operator<=>(const Sentence&, const Sentence&) = default;

 private:
  std::vector<std::string> tokens_;
};

bool is_valid_token(std::string_view surface);

struct LabeledSentence {
  Sentence sentence;
  TagSequence tags;

  friend bool operator==(const LabeledSentence&, const LabeledSentence&) = default;
};

struct LabeledDataset {
  TagSet tagset;
  std::vector<LabeledSentence> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }

  // Throws DataError on a length mismatch or a tag outside the tag set.
  void check() const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

struct UnlabeledCorpus {
  std::vector<Sentence> sentences;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }

  friend bool operator==(const UnlabeledCorpus&, const UnlabeledCorpus&) = default;
};

enum class Provenance : std::uint8_t { kSeed, kWeak };

struct WeakItem {
  LabeledSentence example;
  Provenance provenance = Provenance::kSeed;
};

// Seed examples plus model-labelled corpus sentences.
struct WeakDataset {
  TagSet tagset;
  std::vector<WeakItem> items;

  std::size_t size() const { return items.size(); }
  std::vector<LabeledSentence> examples() const;
};

// ---------------------------------------------------------------------------
// CoNLL I/O
//
// One "token<sep>tag" line per token, a blank line after every sentence.
// Lines whose first column is -DOCSTART- are skipped.

enum class ColumnSeparator { kTab, kSpace };

struct ConllOptions {
  ColumnSeparator separator = ColumnSeparator::kTab;
  // When unset the tag set is inferred: entity types sorted by name.
  std::optional<TagSet> tagset;
};

LabeledDataset read_conll(std::istream& in, const ConllOptions& options = {});
void write_conll(std::ostream& out, const LabeledDataset& data,
                 ColumnSeparator separator = ColumnSeparator::kTab);

// Raw text: one whitespace-tokenized sentence per line; blank lines skipped.
UnlabeledCorpus read_raw_corpus(std::istream& in);
void write_raw_corpus(std::ostream& out, const UnlabeledCorpus& corpus);

// ---------------------------------------------------------------------------

UnlabeledCorpus strip_labels(const LabeledDataset& data);

struct SeedSplit {
  LabeledDataset seed;
  UnlabeledCorpus remainder;
  // Positions of the seed sentences in the input, ascending.
  std::vector<std::size_t> seed_indices;
};

// Seed size is max(1, round(ratio * M)); both parts keep input order.
std::size_t seed_count(std::size_t total, double ratio);
SeedSplit split_seed(const LabeledDataset& data, double ratio, std::uint64_t rng_seed);

// ---------------------------------------------------------------------------
// Synthetic corpora

struct SyntheticSpec {
  std::size_t sentences = 500;
  std::size_t vocab_size = 200;
  std::vector<std::string> entity_types = {"PER", "LOC"};
  std::size_t min_length = 6;
  std::size_t max_length = 20;
  double entity_rate = 0.2;
  std::uint64_t rng_seed = 1;
  // Entity vocabularies are domain specific; background words are shared.
  std::uint32_t domain = 0;
  // Probability that an entity is preceded by a trigger word of its type.
  double trigger_rate = 0.6;

  void check() const;  // throws ConfigError
};

LabeledDataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace seedner
