#include "seedner/tagscheme.hpp"

#include <algorithm>

#include "seedner/error.hpp"

namespace seedner {

TagSet::TagSet(std::vector<std::string> entity_types) : types_(std::move(entity_types)) {
  for (std::size_t i = 0; i < types_.size(); ++i) {
    const auto& t = types_[i];
    if (t.empty()) throw ConfigError("entity type name must be non-empty");
    if (t.find_first_of(" \t\r\n") != std::string::npos)
      throw ConfigError("entity type name contains whitespace: '" + t + "'");
    if (std::find(types_.begin(), types_.begin() + static_cast<std::ptrdiff_t>(i), t) !=
        types_.begin() + static_cast<std::ptrdiff_t>(i))
      throw ConfigError("duplicate entity type: " + t);
  }
}

std::string TagSet::name(Tag tag) const {
  if (!contains(tag)) throw ConfigError("tag index out of range: " + std::to_string(tag));
  if (tag == kOutside) return "O";
  return (is_begin(tag) ? "B-" : "I-") + types_[type_of(tag)];
}

std::optional<std::size_t> TagSet::type_index(std::string_view type) const {
  for (std::size_t i = 0; i < types_.size(); ++i)
    if (types_[i] == type) return i;
  return std::nullopt;
}

std::optional<Tag> TagSet::find(std::string_view name) const {
  if (name == "O") return kOutside;
  if (name.size() < 3 || name[1] != '-') return std::nullopt;
  auto type = type_index(name.substr(2));
  if (!type) return std::nullopt;
  if (name[0] == 'B') return begin_tag(*type);
  if (name[0] == 'I') return inside_tag(*type);
  return std::nullopt;
}

Tag TagSet::parse(std::string_view name) const {
  if (!is_bio_tag(name)) throw DataError("not a BIO tag: '" + std::string(name) + "'");
  auto tag = find(name);
  if (!tag) throw DataError("tag not in tag set: '" + std::string(name) + "'");
  return *tag;
}

bool is_bio_tag(std::string_view name) {
  if (name == "O") return true;
  return name.size() >= 3 && (name[0] == 'B' || name[0] == 'I') && name[1] == '-';
}

TagSequence encode_spans(const std::vector<Span>& spans, std::size_t length,
                         const TagSet& tagset) {
  TagSequence tags(length, TagSet::kOutside);
  std::vector<Span> sorted = spans;
  std::sort(sorted.begin(), sorted.end());
  std::size_t covered = 0;
  for (const auto& s : sorted) {
    if (s.start >= s.end || s.end > length)
      throw ConfigError("span out of range: [" + std::to_string(s.start) + ", " +
                        std::to_string(s.end) + ")");
    if (s.type >= tagset.type_count()) throw ConfigError("span type out of range");
    if (s.start < covered) throw ConfigError("overlapping spans");
    tags[s.start] = tagset.begin_tag(s.type);
    for (std::size_t i = s.start + 1; i < s.end; ++i) tags[i] = tagset.inside_tag(s.type);
    covered = s.end;
  }
  return tags;
}

std::vector<Span> decode_spans(const TagSequence& tags, const TagSet& tagset) {
  std::vector<Span> spans;
  std::optional<Span> open;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const Tag t = tags[i];
    if (!tagset.contains(t)) throw ConfigError("tag index out of range: " + std::to_string(t));
    const bool continues =
        tagset.is_inside(t) && open && open->type == tagset.type_of(t);
    if (continues) {
      open->end = i + 1;
      continue;
    }
    if (open) spans.push_back(*open);
    open.reset();
    if (!tagset.is_outside(t)) open = Span{i, i + 1, tagset.type_of(t)};
  }
  if (open) spans.push_back(*open);
  return spans;
}

std::vector<std::size_t> validate(const TagSequence& tags, const TagSet& tagset) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (!tagset.is_inside(tags[i])) continue;
    const bool ok = i > 0 && !tagset.is_outside(tags[i - 1]) &&
                    tagset.type_of(tags[i - 1]) == tagset.type_of(tags[i]);
    if (!ok) bad.push_back(i);
  }
  return bad;
}

TagSequence repair(TagSequence tags, const TagSet& tagset) {
  for (std::size_t i : validate(tags, tagset))
    tags[i] = tagset.begin_tag(tagset.type_of(tags[i]));
  return tags;
}

}  // namespace seedner
