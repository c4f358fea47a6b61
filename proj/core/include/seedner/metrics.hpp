#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "seedner/tagscheme.hpp"

namespace seedner {

// Span-level precision/recall/F1. Ratios with a zero denominator are 0.
struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  static Scores from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

  friend bool operator==(const Scores&, const Scores&) = default;
};

// Exact (start, end, type) span matches pooled over all sentences.
Scores micro_prf(const std::vector<TagSequence>& gold, const std::vector<TagSequence>& pred,
                 const TagSet& tagset);

// Mean precision/recall/F1 of the last min(m, size) entries; counts are summed.
Scores average_last(const std::vector<Scores>& history, std::size_t m);

// Flat key/value view used by report writers.
std::vector<std::pair<std::string, std::string>> to_record(const Scores& s);

}  // namespace seedner
