#pragma once

// Hand-enumerated span scoring cases. Counts were worked out by hand from
// the exact (start, end, type) matching rule, independent of the library.

#include <cstddef>
#include <string>
#include <vector>

#include "seedner/tagscheme.hpp"

namespace seedner::testing {

struct MetricFixture {
  std::string name;
  std::vector<std::vector<std::string>> gold;
  std::vector<std::vector<std::string>> pred;
  std::size_t tp, fp, fn;
};

inline const std::vector<MetricFixture>& metric_fixtures() {
  static const std::vector<MetricFixture> f = {
      {"identical",
       {{"B-PER", "I-PER", "O", "B-LOC"}},
       {{"B-PER", "I-PER", "O", "B-LOC"}},
       2, 0, 0},
      {"all outside prediction",
       {{"B-PER", "O", "B-LOC", "I-LOC"}},
       {{"O", "O", "O", "O"}},
       0, 0, 2},
      {"wrong type",
       {{"B-PER", "I-PER", "O", "B-LOC"}},
       {{"B-PER", "I-PER", "O", "B-ORG"}},
       1, 1, 1},
      {"boundary too short",
       {{"B-ORG", "I-ORG", "I-ORG"}},
       {{"B-ORG", "I-ORG", "O"}},
       0, 1, 1},
      {"boundary too long",
       {{"B-ORG", "O", "O"}},
       {{"B-ORG", "I-ORG", "O"}},
       0, 1, 1},
      {"split span",
       {{"B-PER", "I-PER", "I-PER"}},
       {{"B-PER", "B-PER", "I-PER"}},
       0, 2, 1},
      {"stray inside opens a span",
       {{"O", "B-LOC", "I-LOC"}},
       {{"O", "I-LOC", "I-LOC"}},
       1, 0, 0},
      {"spurious entities only",
       {{"O", "O", "O"}},
       {{"B-PER", "O", "B-LOC"}},
       0, 2, 0},
      {"pooled over sentences",
       {{"B-PER", "O"}, {"B-LOC", "I-LOC", "O"}, {"O", "B-ORG"}},
       {{"B-PER", "O"}, {"B-LOC", "O", "O"}, {"B-ORG", "O"}},
       1, 2, 2},
      {"adjacent same-type spans",
       {{"B-LOC", "B-LOC", "I-LOC", "O", "B-PER"}},
       {{"B-LOC", "I-LOC", "I-LOC", "O", "B-PER"}},
       1, 1, 2},
  };
  return f;
}

inline TagSet fixture_tagset() { return TagSet({"LOC", "ORG", "PER"}); }

inline std::vector<TagSequence> fixture_tags(const std::vector<std::vector<std::string>>& rows,
                                             const TagSet& tagset) {
  std::vector<TagSequence> out;
  for (const auto& row : rows) {
    TagSequence seq;
    for (const auto& t : row) seq.push_back(tagset.parse(t));
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace seedner::testing
