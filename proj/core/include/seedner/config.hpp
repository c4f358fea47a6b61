#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace seedner {

// Flat "key = value" configuration. '#' starts a comment, blank lines are
// ignored, and later assignments override earlier ones.
class RunConfig {
 public:
  static RunConfig parse(std::istream& in);  // throws ConfigError with the line number
  static RunConfig load(const std::filesystem::path& path);

  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void merge(const RunConfig& other);

  // Typed getters throw ConfigError naming the key on a malformed value.
  std::string str(const std::string& key, const std::string& fallback = "") const;
  std::optional<std::string> maybe(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  std::uint64_t seed(const std::string& key, std::uint64_t fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<std::string> list(const std::string& key) const;  // comma separated
  std::vector<double> reals(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

  // Stable hash of the sorted key/value pairs, hex encoded.
  std::string fingerprint() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace seedner
