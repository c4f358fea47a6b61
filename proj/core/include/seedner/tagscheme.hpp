#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seedner {

using Tag = int;
using TagSequence = std::vector<Tag>;

// BIO tag alphabet over an ordered list of entity types.
//
// Index layout is fixed: O = 0, then for the j-th type B-type = 1 + 2j and
// I-type = 2 + 2j, so size() == 2 * types + 1.
class TagSet {
 public:
  static constexpr Tag kOutside = 0;

  TagSet() = default;
  explicit TagSet(std::vector<std::string> entity_types);

  std::size_t size() const { return 2 * types_.size() + 1; }
  std::size_t type_count() const { return types_.size(); }
  const std::vector<std::string>& entity_types() const { return types_; }

  std::string name(Tag tag) const;
  // Index of a tag string, or nullopt if it is not in this set.
  std::optional<Tag> find(std::string_view name) const;
  Tag parse(std::string_view name) const;  // throws DataError

  Tag begin_tag(std::size_t type) const { return static_cast<Tag>(1 + 2 * type); }
  Tag inside_tag(std::size_t type) const { return static_cast<Tag>(2 + 2 * type); }
  std::optional<std::size_t> type_index(std::string_view type) const;

  bool is_outside(Tag t) const { return t == kOutside; }
  bool is_begin(Tag t) const { return t > 0 && (t % 2) == 1; }
  bool is_inside(Tag t) const { return t > 0 && (t % 2) == 0; }
  // Entity type index of a B or I tag.
  std::size_t type_of(Tag t) const { return static_cast<std::size_t>((t - 1) / 2); }
  bool contains(Tag t) const { return t >= 0 && static_cast<std::size_t>(t) < size(); }

  friend bool operator==(const TagSet&, const TagSet&) = default;

 private:
  std::vector<std::string> types_;
};

// True when `name` is "O", "B-<TYPE>" or "I-<TYPE>" with a non-empty TYPE.
bool is_bio_tag(std::string_view name);

// Half-open token range [start, end) carrying an entity type index.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t type = 0;

  friend auto operator<=>(const Span&, const Span&) = default;
};

TagSequence encode_spans(const std::vector<Span>& spans, std::size_t length,
                         const TagSet& tagset);

// Spans of a tag sequence; a stray I-X (after O or after a different type)
// opens a new span, as conlleval does.
std::vector<Span> decode_spans(const TagSequence& tags, const TagSet& tagset);

// Positions holding an I-tag without a compatible predecessor.
std::vector<std::size_t> validate(const TagSequence& tags, const TagSet& tagset);

// Rewrites every stray I-X as B-X. Valid sequences come back unchanged.
TagSequence repair(TagSequence tags, const TagSet& tagset);

}  // namespace seedner
