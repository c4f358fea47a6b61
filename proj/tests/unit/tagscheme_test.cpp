#include <gtest/gtest.h>

#include <random>

#include "seedner/error.hpp"
#include "seedner/tagscheme.hpp"

namespace seedner {
namespace {

const TagSet kTags({"PER", "LOC"});
const Tag O = TagSet::kOutside;
const Tag BPER = kTags.begin_tag(0), IPER = kTags.inside_tag(0);
const Tag BLOC = kTags.begin_tag(1), ILOC = kTags.inside_tag(1);

TEST(TagSet, LayoutAndNames) {
  EXPECT_EQ(kTags.size(), 5u);
  EXPECT_EQ(kTags.name(0), "O");
  EXPECT_EQ(kTags.name(BPER), "B-PER");
  EXPECT_EQ(kTags.name(ILOC), "I-LOC");
  EXPECT_EQ(kTags.parse("I-PER"), IPER);
  EXPECT_FALSE(kTags.find("B-ORG").has_value());
  EXPECT_THROW(kTags.parse("X-PER"), DataError);
  EXPECT_THROW(kTags.parse("B-ORG"), DataError);
  EXPECT_THROW(TagSet({"PER", "PER"}), ConfigError);
  EXPECT_THROW(TagSet({""}), ConfigError);
}

TEST(TagSet, BioShape) {
  EXPECT_TRUE(is_bio_tag("O"));
  EXPECT_TRUE(is_bio_tag("B-X"));
  EXPECT_TRUE(is_bio_tag("I-GENE_OR_PROTEIN"));
  EXPECT_FALSE(is_bio_tag("B-"));
  EXPECT_FALSE(is_bio_tag("o"));
  EXPECT_FALSE(is_bio_tag("E-PER"));
  EXPECT_FALSE(is_bio_tag(""));
}

TEST(Spans, EncodeExamples) {
  EXPECT_EQ(encode_spans({{0, 2, 0}}, 3, kTags), (TagSequence{BPER, IPER, O}));
  EXPECT_EQ(encode_spans({}, 2, kTags), (TagSequence{O, O}));
  EXPECT_EQ(encode_spans({{1, 2, 1}, {2, 3, 1}}, 3, kTags), (TagSequence{O, BLOC, BLOC}));
}

TEST(Spans, EncodeRejectsOverlapAndRange) {
  EXPECT_THROW(encode_spans({{0, 2, 0}, {1, 3, 1}}, 3, kTags), ConfigError);
  EXPECT_THROW(encode_spans({{2, 4, 0}}, 3, kTags), ConfigError);
  EXPECT_THROW(encode_spans({{1, 1, 0}}, 3, kTags), ConfigError);
  EXPECT_THROW(encode_spans({{0, 1, 7}}, 3, kTags), ConfigError);
}

TEST(Spans, DecodeExamples) {
  EXPECT_EQ(decode_spans({BPER, IPER, O}, kTags), (std::vector<Span>{{0, 2, 0}}));
  EXPECT_TRUE(decode_spans({O, O}, kTags).empty());
  EXPECT_EQ(decode_spans({O, IPER}, kTags), (std::vector<Span>{{1, 2, 0}}));
  EXPECT_EQ(decode_spans({BPER, ILOC}, kTags), (std::vector<Span>{{0, 1, 0}, {1, 2, 1}}));
}

TEST(Spans, Validate) {
  EXPECT_TRUE(validate({BPER, IPER}, kTags).empty());
  EXPECT_EQ(validate({O, IPER}, kTags), (std::vector<std::size_t>{1}));
  EXPECT_EQ(validate({BPER, ILOC}, kTags), (std::vector<std::size_t>{1}));
  EXPECT_EQ(validate({IPER}, kTags), (std::vector<std::size_t>{0}));
}

TEST(Spans, RepairTurnsStrayInsideIntoBegin) {
  EXPECT_EQ(repair({O, IPER, IPER}, kTags), (TagSequence{O, BPER, IPER}));
  EXPECT_EQ(repair({BPER, ILOC}, kTags), (TagSequence{BPER, BLOC}));
}

TEST(SpansProperty, DecodeInvertsEncodeOnRandomSpans) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<Span> spans;
    std::size_t pos = 0;
    while (pos < n) {
      pos += rng() % 3;
      if (pos >= n) break;
      const std::size_t len = 1 + rng() % 3;
      const std::size_t end = std::min(n, pos + len);
      spans.push_back({pos, end, static_cast<std::size_t>(rng() % 2)});
      pos = end;
    }
    const auto tags = encode_spans(spans, n, kTags);
    EXPECT_TRUE(validate(tags, kTags).empty());
    EXPECT_EQ(decode_spans(tags, kTags), spans);
  }
}

TEST(SpansProperty, RepairIsIdempotentAndPreservesSpans) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    TagSequence tags(1 + rng() % 10);
    for (auto& t : tags) t = static_cast<Tag>(rng() % kTags.size());
    const auto fixed = repair(tags, kTags);
    EXPECT_TRUE(validate(fixed, kTags).empty());
    EXPECT_EQ(repair(fixed, kTags), fixed);
    EXPECT_EQ(decode_spans(fixed, kTags), decode_spans(tags, kTags));
    EXPECT_EQ(encode_spans(decode_spans(tags, kTags), tags.size(), kTags), fixed);
  }
}

}  // namespace
}  // namespace seedner
