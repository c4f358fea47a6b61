#include "seedner/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "seedner/error.hpp"

namespace seedner {

namespace {
double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

Scores Scores::from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Scores s;
  s.tp = tp;
  s.fp = fp;
  s.fn = fn;
  s.precision = ratio(tp, tp + fp);
  s.recall = ratio(tp, tp + fn);
  const double pr = s.precision + s.recall;
  s.f1 = pr == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / pr;
  return s;
}

Scores micro_prf(const std::vector<TagSequence>& gold, const std::vector<TagSequence>& pred,
                 const TagSet& tagset) {
  if (gold.size() != pred.size())
    throw DataError("gold has " + std::to_string(gold.size()) + " sentences, prediction has " +
                    std::to_string(pred.size()));
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != pred[i].size())
      throw DataError("sentence " + std::to_string(i) + ": gold and prediction lengths differ");
    const auto g = decode_spans(gold[i], tagset);
    const auto p = decode_spans(pred[i], tagset);
    // Both lists are sorted and non-overlapping.
    std::size_t matched = 0;
    auto gi = g.begin();
    for (const auto& span : p) {
      while (gi != g.end() && *gi < span) ++gi;
      if (gi != g.end() && *gi == span) ++matched;
    }
    tp += matched;
    fp += p.size() - matched;
    fn += g.size() - matched;
  }
  return Scores::from_counts(tp, fp, fn);
}

Scores average_last(const std::vector<Scores>& history, std::size_t m) {
  if (history.empty()) throw ConfigError("average_last needs a non-empty history");
  const std::size_t take = std::max<std::size_t>(1, std::min(m, history.size()));
  Scores avg;
  for (auto it = history.end() - static_cast<std::ptrdiff_t>(take); it != history.end(); ++it) {
    avg.precision += it->precision;
    avg.recall += it->recall;
    avg.f1 += it->f1;
    avg.tp += it->tp;
    avg.fp += it->fp;
    avg.fn += it->fn;
  }
  const double k = static_cast<double>(take);
  avg.precision /= k;
  avg.recall /= k;
  avg.f1 /= k;
  return avg;
}

std::vector<std::pair<std::string, std::string>> to_record(const Scores& s) {
  auto fmt = [](double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
  };
  return {{"precision", fmt(s.precision)}, {"recall", fmt(s.recall)}, {"f1", fmt(s.f1)},
          {"tp", std::to_string(s.tp)},    {"fp", std::to_string(s.fp)},
          {"fn", std::to_string(s.fn)}};
}

}  // namespace seedner
