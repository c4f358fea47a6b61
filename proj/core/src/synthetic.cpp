#include <array>
#include <cctype>
#include <random>
#include <string_view>
#include <unordered_set>

#include "seedner/corpus.hpp"
#include "seedner/error.hpp"

namespace seedner {

void SyntheticSpec::check() const {
  if (vocab_size < 10) throw ConfigError("synthetic vocab_size must be >= 10");
  if (entity_types.empty()) throw ConfigError("synthetic spec needs at least one entity type");
  if (!(entity_rate >= 0.0 && entity_rate < 1.0))
    throw ConfigError("synthetic entity_rate must be in [0, 1)");
  if (!(trigger_rate >= 0.0 && trigger_rate <= 1.0))
    throw ConfigError("synthetic trigger_rate must be in [0, 1]");
  if (min_length < 1 || max_length < min_length)
    throw ConfigError("synthetic sentence length range is invalid");
  if (vocab_size < 4 * (entity_types.size() + 1))
    throw ConfigError("synthetic vocab_size too small for the number of entity types");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Pronounceable pseudo-words indexed by a global lexicon id. Spelling is a
// hash of the id, so affixes carry no information about the vocabulary block,
// and words are assigned in id order so every id spells the same way in every
// corpus.
class Lexicon {
 public:
  explicit Lexicon(std::size_t size) {
    static constexpr std::string_view kOnsets = "bcdfghjklmnprstvwz";
    static constexpr std::string_view kVowels = "aeiou";
    std::unordered_set<std::string> used;
    words_.reserve(size);
    for (std::uint64_t id = 0; id < size; ++id) {
      for (std::uint64_t salt = 0;; ++salt) {
        std::uint64_t h = splitmix64(id * 1315423911ULL + salt);
        const int syllables = 2 + static_cast<int>(h % 2);
        h /= 2;
        std::string w;
        for (int s = 0; s < syllables; ++s) {
          w += kOnsets[h % kOnsets.size()];
          h /= kOnsets.size();
          w += kVowels[h % kVowels.size()];
          h /= kVowels.size();
        }
        if (used.insert(w).second) {
          words_.push_back(std::move(w));
          break;
        }
      }
    }
  }

  const std::string& word(std::uint64_t id) const { return words_.at(id); }

 private:
  std::vector<std::string> words_;
};

std::string capitalize(std::string w) {
  if (!w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
  return w;
}

std::discrete_distribution<std::size_t> zipf(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t r = 0; r < n; ++r) w[r] = 1.0 / static_cast<double>(r + 1);
  return {w.begin(), w.end()};
}

}  // namespace

LabeledDataset generate_synthetic(const SyntheticSpec& spec) {
  spec.check();
  const std::size_t types = spec.entity_types.size();
  const std::size_t background = spec.vocab_size / 2;
  const std::size_t triggers_per_type = 3;
  const std::size_t per_type = (spec.vocab_size - background) / types;
  const std::size_t plain_background = background - triggers_per_type * types;

  // Lexicon ids: [0, background) shared; entity blocks follow, one set per domain.
  auto trigger_id = [&](std::size_t type, std::size_t j) {
    return plain_background + type * triggers_per_type + j;
  };
  auto entity_id = [&](std::size_t type, std::size_t j) {
    return background + (static_cast<std::uint64_t>(spec.domain) * types + type) * per_type + j;
  };

  const Lexicon lexicon(entity_id(types - 1, per_type - 1) + 1);
  std::mt19937_64 rng(spec.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> length(spec.min_length, spec.max_length);
  std::uniform_int_distribution<std::size_t> type_pick(0, types - 1);
  std::uniform_int_distribution<std::size_t> span_len(1, 3);
  std::uniform_int_distribution<std::size_t> trigger_pick(0, triggers_per_type - 1);
  auto background_dist = zipf(plain_background);
  auto entity_dist = zipf(per_type);

  // An entity (mean length 2) is always followed by an O token, so with a
  // per-slot start probability s the non-O fraction is 2s / (1 + 2s).
  const double start_prob = spec.entity_rate / (2.0 * (1.0 - spec.entity_rate));

  LabeledDataset data;
  data.tagset = TagSet(spec.entity_types);
  data.items.reserve(spec.sentences);
  for (std::size_t s = 0; s < spec.sentences; ++s) {
    const std::size_t n = length(rng);
    std::vector<std::string> tokens;
    TagSequence tags;
    bool prev_plain = false;  // previous token is a plain background word
    bool after_entity = false;
    while (tokens.size() < n) {
      if (!after_entity && unit(rng) < start_prob) {
        const std::size_t type = type_pick(rng);
        const std::size_t len = std::min(span_len(rng), n - tokens.size());
        if (prev_plain && unit(rng) < spec.trigger_rate)
          tokens.back() = lexicon.word(trigger_id(type, trigger_pick(rng)));
        for (std::size_t j = 0; j < len; ++j) {
          tokens.push_back(capitalize(lexicon.word(entity_id(type, entity_dist(rng)))));
          tags.push_back(j == 0 ? data.tagset.begin_tag(type) : data.tagset.inside_tag(type));
        }
        prev_plain = false;
        after_entity = true;
      } else {
        std::string w = lexicon.word(background_dist(rng));
        tokens.push_back(tokens.empty() ? capitalize(std::move(w)) : std::move(w));
        tags.push_back(TagSet::kOutside);
        prev_plain = true;
        after_entity = false;
      }
    }
    data.items.push_back({Sentence(std::move(tokens)), std::move(tags)});
  }
  return data;
}

}  // namespace seedner
