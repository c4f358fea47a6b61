#include "seedner/emissions.hpp"

#include <algorithm>
#include <cmath>

#include "seedner/error.hpp"
#include "seedner/hash.hpp"

namespace seedner {

namespace {

std::string ascii_lower(std::string_view w) {
  std::string out(w);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

// Byte offsets of code point starts, plus the end offset.
std::vector<std::size_t> code_point_offsets(std::string_view w) {
  std::vector<std::size_t> offs;
  for (std::size_t i = 0; i < w.size(); ++i)
    if ((static_cast<unsigned char>(w[i]) & 0xC0) != 0x80) offs.push_back(i);
  offs.push_back(w.size());
  return offs;
}

}  // namespace

std::string word_shape(std::string_view word) {
  std::string shape;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto c = static_cast<unsigned char>(word[i]);
    if (c >= 0x80) {
      if ((c & 0xC0) != 0x80) shape += 'x';
    } else if (c >= 'A' && c <= 'Z') {
      shape += 'A';
    } else if (c >= 'a' && c <= 'z') {
      shape += 'a';
    } else if (c >= '0' && c <= '9') {
      shape += '0';
    } else {
      shape += static_cast<char>(c);
    }
  }
  return shape;
}

std::vector<std::string> feature_names(const Sentence& sentence, std::size_t i) {
  if (i >= sentence.size()) throw ConfigError("feature position out of range");
  const std::string lower = ascii_lower(sentence[i]);
  const auto offs = code_point_offsets(lower);
  const std::size_t cps = offs.size() - 1;

  std::vector<std::string> f;
  f.reserve(12);
  f.emplace_back("bias");
  f.push_back("w=" + lower);
  f.push_back("shape=" + word_shape(sentence[i]));
  for (std::size_t k = 1; k <= std::min<std::size_t>(3, cps); ++k)
    f.push_back("p" + std::to_string(k) + "=" + lower.substr(0, offs[k]));
  for (std::size_t k = 1; k <= std::min<std::size_t>(3, cps); ++k)
    f.push_back("s" + std::to_string(k) + "=" + lower.substr(offs[cps - k]));
  if (i == 0)
    f.emplace_back("bos");
  else
    f.push_back("prev=" + ascii_lower(sentence[i - 1]));
  if (i + 1 == sentence.size())
    f.emplace_back("eos");
  else
    f.push_back("next=" + ascii_lower(sentence[i + 1]));
  return f;
}

FeatureExtractor::FeatureExtractor(unsigned hash_bits) : bits_(hash_bits) {
  if (hash_bits < 1 || hash_bits > 30) throw ConfigError("hash_bits must be in [1, 30]");
}

std::uint32_t FeatureExtractor::bucket(std::string_view feature) const {
  return static_cast<std::uint32_t>(fnv1a64(feature) & ((std::uint64_t{1} << bits_) - 1));
}

FeatureVector FeatureExtractor::extract(const Sentence& sentence, std::size_t i) const {
  FeatureVector fv;
  for (const auto& name : feature_names(sentence, i)) fv.indices.push_back(bucket(name));
  std::sort(fv.indices.begin(), fv.indices.end());
  fv.indices.erase(std::unique(fv.indices.begin(), fv.indices.end()), fv.indices.end());
  return fv;
}

Matrix softmax_probs(const Matrix& scores) {
  Matrix probs(scores.rows(), scores.cols());
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    auto in = scores.row(i);
    if (!std::all_of(in.begin(), in.end(), [](double x) { return std::isfinite(x); }))
      throw NumericalError("non-finite emission score at position " + std::to_string(i));
    const double m = *std::max_element(in.begin(), in.end());
    auto out = probs.row(i);
    double z = 0.0;
    for (std::size_t k = 0; k < in.size(); ++k) z += (out[k] = std::exp(in[k] - m));
    for (double& p : out) p /= z;
  }
  return probs;
}

EmissionMatrix make_emissions(Matrix scores) {
  EmissionMatrix e;
  e.probs = softmax_probs(scores);
  e.scores = std::move(scores);
  return e;
}

EmissionScorer EmissionScorer::features(std::size_t num_tags, unsigned hash_bits) {
  if (num_tags == 0) throw ConfigError("scorer needs at least one tag");
  EmissionScorer s;
  s.kind_ = ScorerKind::kFeatures;
  s.extractor_ = FeatureExtractor(hash_bits);
  s.weights_ = Matrix(s.extractor_.hash_space(), num_tags);
  return s;
}

EmissionScorer EmissionScorer::embedding(std::size_t num_tags,
                                         std::shared_ptr<const EmbeddingTable> table,
                                         std::size_t context_radius) {
  if (num_tags == 0) throw ConfigError("scorer needs at least one tag");
  if (!table) throw ConfigError("embedding scorer needs an embedding table");
  EmissionScorer s;
  s.kind_ = ScorerKind::kEmbedding;
  s.radius_ = context_radius;
  s.weights_ = Matrix(2 * table->dim() + 1, num_tags);
  s.table_ = std::move(table);
  return s;
}

void EmissionScorer::set_weights(Matrix w) {
  if (w.rows() != weights_.rows() || w.cols() != weights_.cols())
    throw DataError("emission weights have shape " + std::to_string(w.rows()) + "x" +
                    std::to_string(w.cols()) + ", expected " + std::to_string(weights_.rows()) +
                    "x" + std::to_string(weights_.cols()));
  weights_ = std::move(w);
}

EmissionScorer EmissionScorer::with_table(std::shared_ptr<const EmbeddingTable> table) const {
  if (kind_ != ScorerKind::kEmbedding) throw ConfigError("scorer does not use embeddings");
  if (!table || table->dim() != table_->dim())
    throw ConfigError("replacement embedding table has a different dimension");
  EmissionScorer s = *this;
  s.table_ = std::move(table);
  return s;
}

std::vector<TokenInput> EmissionScorer::inputs(const Sentence& sentence) const {
  const std::size_t n = sentence.size();
  std::vector<TokenInput> out(n);
  if (kind_ == ScorerKind::kFeatures) {
    for (std::size_t i = 0; i < n; ++i) {
      for (auto idx : extractor_.extract(sentence, i).indices) out[i].push_back({idx, 1.0});
    }
    return out;
  }

  const std::size_t d = table_->dim();
  const auto ids = table_->encode(sentence);
  const Matrix& emb = table_->vectors();
  for (std::size_t i = 0; i < n; ++i) {
    auto& x = out[i];
    x.reserve(2 * d + 1);
    auto self = emb.row(static_cast<std::size_t>(ids[i]));
    for (std::size_t a = 0; a < d; ++a) x.push_back({static_cast<std::uint32_t>(a), self[a]});

    std::vector<double> ctx(d, 0.0);
    std::size_t count = 0;
    const std::size_t lo = i >= radius_ ? i - radius_ : 0;
    const std::size_t hi = std::min(n - 1, i + radius_);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j == i) continue;
      auto e = emb.row(static_cast<std::size_t>(ids[j]));
      for (std::size_t a = 0; a < d; ++a) ctx[a] += e[a];
      ++count;
    }
    for (std::size_t a = 0; a < d; ++a)
      x.push_back({static_cast<std::uint32_t>(d + a),
                   count ? ctx[a] / static_cast<double>(count) : 0.0});
    x.push_back({static_cast<std::uint32_t>(2 * d), 1.0});
  }
  return out;
}

EmissionMatrix EmissionScorer::score(const std::vector<TokenInput>& inputs) const {
  const std::size_t k = num_tags();
  Matrix scores(inputs.size(), k);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto row = scores.row(i);
    for (const auto& [idx, value] : inputs[i]) {
      if (idx >= weights_.rows()) throw DataError("token input index exceeds scorer dimension");
      auto w = weights_.row(idx);
      for (std::size_t t = 0; t < k; ++t) row[t] += value * w[t];
    }
  }
  return make_emissions(std::move(scores));
}

}  // namespace seedner
