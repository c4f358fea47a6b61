#include "seedner/config.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "seedner/error.hpp"
#include "seedner/hash.hpp"

namespace seedner {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* want) {
  throw ConfigError("config key '" + key + "': expected " + want + ", got '" + value + "'");
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in) {
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    cfg.values_[key] = trim(std::string_view(body).substr(eq + 1));
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path.string());
  return parse(in);
}

void RunConfig::merge(const RunConfig& other) {
  for (const auto& [k, v] : other.values_) values_[k] = v;
}

std::optional<std::string> RunConfig::maybe(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::string RunConfig::str(const std::string& key, const std::string& fallback) const {
  return maybe(key).value_or(fallback);
}

double RunConfig::real(const std::string& key, double fallback) const {
  auto v = maybe(key);
  if (!v) return fallback;
  std::istringstream is(*v);
  is.imbue(std::locale::classic());
  double x = 0.0;
  if (!(is >> x) || !(is >> std::ws).eof()) bad_value(key, *v, "a number");
  return x;
}

std::int64_t RunConfig::integer(const std::string& key, std::int64_t fallback) const {
  auto v = maybe(key);
  if (!v) return fallback;
  std::int64_t x = 0;
  auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
  if (ec != std::errc{} || p != v->data() + v->size()) bad_value(key, *v, "an integer");
  return x;
}

std::size_t RunConfig::count(const std::string& key, std::size_t fallback) const {
  const auto x = integer(key, static_cast<std::int64_t>(fallback));
  if (x < 0) bad_value(key, str(key), "a non-negative integer");
  return static_cast<std::size_t>(x);
}

std::uint64_t RunConfig::seed(const std::string& key, std::uint64_t fallback) const {
  auto v = maybe(key);
  if (!v) return fallback;
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
  if (ec != std::errc{} || p != v->data() + v->size()) bad_value(key, *v, "an unsigned integer");
  return x;
}

bool RunConfig::flag(const std::string& key, bool fallback) const {
  auto v = maybe(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  bad_value(key, *v, "a boolean");
}

std::vector<std::string> RunConfig::list(const std::string& key) const {
  std::vector<std::string> out;
  auto v = maybe(key);
  if (!v) return out;
  std::string_view rest = *v;
  while (true) {
    const auto comma = rest.find(',');
    auto item = trim(rest.substr(0, comma));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<double> RunConfig::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : list(key)) {
    RunConfig one;
    one.set(key, item);
    out.push_back(one.real(key, 0.0));
  }
  return out;
}

std::string RunConfig::fingerprint() const {
  std::uint64_t h = fnv1a64("");
  for (const auto& [k, v] : values_) {
    h = fnv1a64(k, h);
    h = fnv1a64("=", h);
    h = fnv1a64(v, h);
    h = fnv1a64("\n", h);
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace seedner
