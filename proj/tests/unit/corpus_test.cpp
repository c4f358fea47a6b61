#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>
#include <sstream>

#include "seedner/corpus.hpp"
#include "seedner/error.hpp"

namespace seedner {
namespace {

LabeledDataset parse(const std::string& text, ConllOptions options = {}) {
  std::istringstream in(text);
  return read_conll(in, options);
}

std::string render(const LabeledDataset& d, ColumnSeparator sep = ColumnSeparator::kTab) {
  std::ostringstream out;
  write_conll(out, d, sep);
  return out.str();
}

TEST(ReadConll, TwoColumnExample) {
  const auto d = parse("the\tO\nEU\tB-ORG\n\n");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.items[0].sentence.tokens(), (std::vector<std::string>{"the", "EU"}));
  EXPECT_EQ(d.tagset.entity_types(), (std::vector<std::string>{"ORG"}));
  EXPECT_EQ(d.items[0].tags, (TagSequence{0, d.tagset.parse("B-ORG")}));
}

TEST(ReadConll, EmptyStream) { EXPECT_TRUE(parse("").empty()); }

TEST(ReadConll, WrongColumnCountReportsLine) {
  ConllOptions space;
  space.separator = ColumnSeparator::kSpace;
  try {
    parse("EU B-ORG extra-col\n", space);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  try {
    parse("a\tO\nb\tO\tX\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ReadConll, RejectsNonBioTags) {
  EXPECT_THROW(parse("a\tB-\n"), ParseError);
  EXPECT_THROW(parse("a\tE-PER\n"), ParseError);
  ConllOptions fixed;
  fixed.tagset = TagSet({"PER"});
  EXPECT_THROW(parse("a\tB-LOC\n", fixed), ParseError);
}

TEST(ReadConll, SkipsDocstartAndToleratesMissingFinalBlank) {
  const auto d = parse("-DOCSTART-\tO\n\na\tB-PER\nb\tI-PER\n\nc\tO");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.items[1].sentence.tokens(), (std::vector<std::string>{"c"}));
}

TEST(ReadConll, InfersSortedTypes) {
  const auto d = parse("a\tB-ZED\nb\tB-ALPHA\n\n");
  EXPECT_EQ(d.tagset.entity_types(), (std::vector<std::string>{"ALPHA", "ZED"}));
}

TEST(ConllRoundTrip, ByteIdentical) {
  const std::string text = "EU\tB-ORG\nrejects\tO\nGerman\tB-MISC\ncall\tO\n\nPeter\tB-PER\nBlackburn\tI-PER\n\n";
  EXPECT_EQ(render(parse(text)), text);
  const std::string spaced = "a O\nb B-X\n\n";
  ConllOptions sp;
  sp.separator = ColumnSeparator::kSpace;
  EXPECT_EQ(render(parse(spaced, sp), ColumnSeparator::kSpace), spaced);
}

TEST(ConllRoundTrip, SyntheticCorpus) {
  SyntheticSpec spec;
  spec.sentences = 50;
  const auto d = generate_synthetic(spec);
  const auto text = render(d);
  ConllOptions opts;
  opts.tagset = d.tagset;
  EXPECT_EQ(parse(text, opts), d);
  EXPECT_EQ(render(parse(text, opts)), text);
}

TEST(RawCorpus, RoundTrip) {
  std::istringstream in("a b c\n\n  d   e \n");
  const auto c = read_raw_corpus(in);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.sentences[1].tokens(), (std::vector<std::string>{"d", "e"}));
  std::ostringstream out;
  write_raw_corpus(out, c);
  EXPECT_EQ(out.str(), "a b c\nd e\n");
}

LabeledDataset numbered(std::size_t n) {
  LabeledDataset d;
  d.tagset = TagSet({"PER"});
  for (std::size_t i = 0; i < n; ++i)
    d.items.push_back({Sentence({"s" + std::to_string(i)}), {0}});
  return d;
}

TEST(SplitSeed, Counts) {
  auto s = split_seed(numbered(10), 0.3, 1);
  EXPECT_EQ(s.seed.size(), 3u);
  EXPECT_EQ(s.remainder.size(), 7u);
  s = split_seed(numbered(10), 1.0, 1);
  EXPECT_EQ(s.seed.size(), 10u);
  EXPECT_EQ(s.remainder.size(), 0u);
  EXPECT_EQ(seed_count(3, 0.01), 1u);
  EXPECT_THROW(split_seed(numbered(10), 0.0, 1), ConfigError);
  EXPECT_THROW(split_seed(numbered(10), 1.5, 1), ConfigError);
}

TEST(SplitSeed, PartitionKeepsOrderAndIsDeterministic) {
  const auto data = numbered(40);
  const auto a = split_seed(data, 0.25, 9);
  const auto b = split_seed(data, 0.25, 9);
  EXPECT_EQ(a.seed_indices, b.seed_indices);
  EXPECT_TRUE(std::is_sorted(a.seed_indices.begin(), a.seed_indices.end()));
  std::size_t si = 0, ri = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (si < a.seed_indices.size() && a.seed_indices[si] == i) {
      EXPECT_EQ(a.seed.items[si++], data.items[i]);
    } else {
      EXPECT_EQ(a.remainder.sentences[ri++], data.items[i].sentence);
    }
  }
  EXPECT_EQ(si + ri, data.size());
  EXPECT_NE(split_seed(data, 0.25, 10).seed_indices, a.seed_indices);
}

TEST(StripLabels, Projection) {
  const auto d = numbered(2);
  const auto c = strip_labels(d);
  ASSERT_EQ(c.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(c.sentences[i], d.items[i].sentence);
    EXPECT_EQ((LabeledSentence{c.sentences[i], d.items[i].tags}), d.items[i]);
  }
  EXPECT_TRUE(strip_labels(LabeledDataset{}).empty());
}

TEST(Sentence, RejectsBadTokens) {
  EXPECT_THROW(Sentence({"a b"}), DataError);
  EXPECT_THROW(Sentence({""}), DataError);
  EXPECT_NO_THROW(Sentence({"Größe"}));
}

TEST(Synthetic, Deterministic) {
  SyntheticSpec spec;
  spec.sentences = 100;
  EXPECT_EQ(generate_synthetic(spec), generate_synthetic(spec));
  auto other = spec;
  other.rng_seed = 2;
  EXPECT_NE(generate_synthetic(spec), generate_synthetic(other));
}

TEST(Synthetic, ZeroRateIsAllOutside) {
  SyntheticSpec spec;
  spec.entity_rate = 0.0;
  spec.sentences = 50;
  for (const auto& item : generate_synthetic(spec).items)
    for (Tag t : item.tags) EXPECT_EQ(t, TagSet::kOutside);
}

TEST(Synthetic, EntityRateWithinTwentyPercent) {
  SyntheticSpec spec;
  const auto d = generate_synthetic(spec);
  ASSERT_EQ(d.size(), 500u);
  std::size_t tokens = 0, entity = 0;
  for (const auto& item : d.items) {
    tokens += item.tags.size();
    for (Tag t : item.tags) entity += t != TagSet::kOutside;
    EXPECT_GE(item.tags.size(), spec.min_length);
    EXPECT_LE(item.tags.size(), spec.max_length);
    EXPECT_TRUE(validate(item.tags, d.tagset).empty());
  }
  const double rate = static_cast<double>(entity) / static_cast<double>(tokens);
  EXPECT_NEAR(rate, spec.entity_rate, 0.2 * spec.entity_rate);
}

TEST(Synthetic, DomainsShareBackgroundButNotEntities) {
  SyntheticSpec a;
  a.sentences = 300;
  auto b = a;
  b.domain = 1;
  std::set<std::string> ents_a, ents_b, bg_a, bg_b;
  for (auto [spec, ents, bg] : {std::tuple{&a, &ents_a, &bg_a}, std::tuple{&b, &ents_b, &bg_b}}) {
    for (const auto& item : generate_synthetic(*spec).items)
      for (std::size_t i = 0; i < item.tags.size(); ++i)
        (item.tags[i] ? ents : bg)->insert(item.sentence[i]);
  }
  for (const auto& w : ents_a) EXPECT_FALSE(ents_b.count(w)) << w;
  std::size_t shared = 0;
  for (const auto& w : bg_a) shared += bg_b.count(w);
  EXPECT_GT(shared, bg_a.size() / 2);
}

TEST(Synthetic, RejectsBadSpecs) {
  SyntheticSpec s;
  s.entity_rate = 1.0;
  EXPECT_THROW(generate_synthetic(s), ConfigError);
  s = {};
  s.entity_types.clear();
  EXPECT_THROW(generate_synthetic(s), ConfigError);
  s = {};
  s.min_length = 5;
  s.max_length = 4;
  EXPECT_THROW(generate_synthetic(s), ConfigError);
}

}  // namespace
}  // namespace seedner
