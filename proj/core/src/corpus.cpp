#include "seedner/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "seedner/error.hpp"

namespace seedner {

bool is_valid_token(std::string_view surface) {
  return !surface.empty() && surface.find_first_of(" \t\r\n\v\f") == std::string_view::npos;
}

Sentence::Sentence(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (const auto& t : tokens_)
    if (!is_valid_token(t)) throw DataError("invalid token '" + t + "'");
}

void LabeledDataset::check() const {
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    if (item.sentence.empty()) throw DataError("sentence " + std::to_string(i) + " is empty");
    if (item.sentence.size() != item.tags.size())
      throw DataError("sentence " + std::to_string(i) + ": token/tag length mismatch");
    for (Tag t : item.tags)
      if (!tagset.contains(t))
        throw DataError("sentence " + std::to_string(i) + ": tag index out of range");
  }
}

std::vector<LabeledSentence> WeakDataset::examples() const {
  std::vector<LabeledSentence> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.example);
  return out;
}

namespace {

std::vector<std::string_view> split_columns(std::string_view line, char sep) {
  std::vector<std::string_view> cols;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    cols.push_back(line.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return cols;
}

struct RawSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  std::vector<std::size_t> lines;
};

}  // namespace

LabeledDataset read_conll(std::istream& in, const ConllOptions& options) {
  const char sep = options.separator == ColumnSeparator::kTab ? '\t' : ' ';
  std::vector<RawSentence> raw;
  RawSentence current;
  std::string line;
  std::size_t lineno = 0;

  auto flush = [&] {
    if (!current.tokens.empty()) raw.push_back(std::move(current));
    current = RawSentence{};
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    auto cols = split_columns(line, sep);
    if (cols.front() == "-DOCSTART-") continue;
    if (cols.size() != 2)
      throw ParseError(lineno, "expected 2 columns, found " + std::to_string(cols.size()));
    if (!is_valid_token(cols[0])) throw ParseError(lineno, "invalid token");
    if (!is_bio_tag(cols[1]))
      throw ParseError(lineno, "not a BIO tag: '" + std::string(cols[1]) + "'");
    if (options.tagset && !options.tagset->find(cols[1]))
      throw ParseError(lineno, "tag not in tag set: '" + std::string(cols[1]) + "'");
    current.tokens.emplace_back(cols[0]);
    current.tags.emplace_back(cols[1]);
    current.lines.push_back(lineno);
  }
  flush();

  LabeledDataset data;
  if (options.tagset) {
    data.tagset = *options.tagset;
  } else {
    std::set<std::string> types;
    for (const auto& s : raw)
      for (const auto& t : s.tags)
        if (t != "O") types.insert(t.substr(2));
    data.tagset = TagSet(std::vector<std::string>(types.begin(), types.end()));
  }

  data.items.reserve(raw.size());
  for (auto& s : raw) {
    TagSequence tags;
    tags.reserve(s.tags.size());
    for (std::size_t i = 0; i < s.tags.size(); ++i) {
      auto t = data.tagset.find(s.tags[i]);
      if (!t) throw ParseError(s.lines[i], "tag not in tag set: '" + s.tags[i] + "'");
      tags.push_back(*t);
    }
    data.items.push_back({Sentence(std::move(s.tokens)), std::move(tags)});
  }
  return data;
}

void write_conll(std::ostream& out, const LabeledDataset& data, ColumnSeparator separator) {
  const char sep = separator == ColumnSeparator::kTab ? '\t' : ' ';
  for (const auto& item : data.items) {
    for (std::size_t i = 0; i < item.sentence.size(); ++i)
      out << item.sentence[i] << sep << data.tagset.name(item.tags[i]) << '\n';
    out << '\n';
  }
}

UnlabeledCorpus read_raw_corpus(std::istream& in) {
  UnlabeledCorpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(std::move(w));
    if (!tokens.empty()) corpus.sentences.emplace_back(std::move(tokens));
  }
  return corpus;
}

void write_raw_corpus(std::ostream& out, const UnlabeledCorpus& corpus) {
  for (const auto& s : corpus.sentences) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  }
}

UnlabeledCorpus strip_labels(const LabeledDataset& data) {
  UnlabeledCorpus corpus;
  corpus.sentences.reserve(data.size());
  for (const auto& item : data.items) corpus.sentences.push_back(item.sentence);
  return corpus;
}

std::size_t seed_count(std::size_t total, double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0))
    throw ConfigError("seed ratio must be in (0, 1], got " + std::to_string(ratio));
  const auto n = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(total)));
  return std::min(total, std::max<std::size_t>(1, n));
}

SeedSplit split_seed(const LabeledDataset& data, double ratio, std::uint64_t rng_seed) {
  if (data.empty()) throw ConfigError("cannot split an empty dataset");
  const std::size_t n = seed_count(data.size(), ratio);

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(rng_seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<char> chosen(data.size(), 0);
  for (std::size_t i = 0; i < n; ++i) chosen[order[i]] = 1;

  SeedSplit split;
  split.seed.tagset = data.tagset;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (chosen[i]) {
      split.seed.items.push_back(data.items[i]);
      split.seed_indices.push_back(i);
    } else {
      split.remainder.sentences.push_back(data.items[i].sentence);
    }
  }
  return split;
}

}  // namespace seedner
