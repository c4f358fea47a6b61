#include "seedner/mlm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "seedner/error.hpp"
#include "seedner/hash.hpp"

namespace seedner {

EmbeddingTable EmbeddingTable::create(const std::vector<std::string>& words, std::size_t dim,
                                      std::uint64_t rng_seed, double scale) {
  if (dim < 2) throw ConfigError("embedding dimension must be >= 2");
  std::vector<std::string> vocab = {kUnkToken, kMaskToken};
  vocab.insert(vocab.end(), words.begin(), words.end());
  const std::size_t v = vocab.size();

  Matrix vectors(v, dim);
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> init(-scale, scale);
  for (double& x : vectors.data()) x = init(rng);
  return from_parts(std::move(vocab), std::move(vectors), Matrix(v, dim),
                    std::vector<double>(v, 0.0));
}

EmbeddingTable EmbeddingTable::from_parts(std::vector<std::string> vocab, Matrix vectors,
                                          Matrix output, std::vector<double> output_bias) {
  const std::size_t v = vocab.size();
  if (v < 2 || vocab[kUnk] != kUnkToken || vocab[kMask] != kMaskToken)
    throw DataError("embedding vocabulary must start with [UNK], [MASK]");
  if (vectors.rows() != v || output.rows() != v || output_bias.size() != v ||
      output.cols() != vectors.cols())
    throw DataError("embedding table dimensions do not match its vocabulary");
  if (vectors.cols() < 2) throw DataError("embedding dimension must be >= 2");
  auto finite = [](const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(vectors.data()) || !finite(output.data()) || !finite(output_bias))
    throw NumericalError("embedding table contains non-finite values");

  EmbeddingTable t;
  for (std::size_t i = 0; i < v; ++i) {
    if (!t.index_.emplace(vocab[i], static_cast<int>(i)).second)
      throw DataError("duplicate vocabulary entry: " + vocab[i]);
  }
  t.vocab_ = std::move(vocab);
  t.vectors_ = std::move(vectors);
  t.output_ = std::move(output);
  t.bias_ = std::move(output_bias);
  return t;
}

int EmbeddingTable::index_of(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnk : it->second;
}

std::vector<int> EmbeddingTable::encode(const Sentence& sentence, std::size_t max_length) const {
  std::size_t n = sentence.size();
  if (max_length > 0) n = std::min(n, max_length);
  std::vector<int> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = index_of(sentence[i]);
  return ids;
}

std::vector<std::string> corpus_vocabulary(const UnlabeledCorpus& corpus) {
  std::set<std::string> words;
  for (const auto& s : corpus.sentences) words.insert(s.tokens().begin(), s.tokens().end());
  words.erase(EmbeddingTable::kUnkToken);
  words.erase(EmbeddingTable::kMaskToken);
  return {words.begin(), words.end()};
}

void AdaptConfig::check() const {
  if (!(mask_rate > 0.0 && mask_rate < 1.0)) throw ConfigError("mask_rate must be in (0, 1)");
  if (!(learning_rate > 0.0)) throw ConfigError("adapt learning_rate must be positive");
  if (batch_size == 0) throw ConfigError("adapt batch_size must be positive");
  if (!(heldout_fraction >= 0.0 && heldout_fraction < 1.0))
    throw ConfigError("heldout_fraction must be in [0, 1)");
}

MaskedExample mask_sequence(std::span<const int> tokens, double mask_rate, std::mt19937_64& rng) {
  if (tokens.empty()) throw ConfigError("cannot mask an empty sequence");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MaskedExample ex;
  ex.tokens.assign(tokens.begin(), tokens.end());
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (unit(rng) < mask_rate) ex.targets.emplace_back(i, tokens[i]);
  if (ex.targets.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, tokens.size() - 1);
    const std::size_t i = pick(rng);
    ex.targets.emplace_back(i, tokens[i]);
  }
  for (const auto& [pos, original] : ex.targets) ex.tokens[pos] = EmbeddingTable::kMask;
  return ex;
}

MlmLoss mlm_loss(const EmbeddingTable& table, const std::vector<MaskedExample>& batch,
                 std::size_t context_radius, bool with_gradient) {
  const std::size_t v = table.vocab_size();
  const std::size_t d = table.dim();
  const Matrix& emb = table.vectors();
  const Matrix& out = table.output();
  const auto& bias = table.output_bias();

  MlmLoss result;
  for (const auto& ex : batch) result.targets += ex.targets.size();
  if (result.targets == 0) throw ConfigError("mlm_loss needs at least one masked target");
  if (with_gradient) {
    result.gradient.vectors = Matrix(v, d);
    result.gradient.output = Matrix(v, d);
    result.gradient.output_bias.assign(v, 0.0);
  }
  const double inv_targets = 1.0 / static_cast<double>(result.targets);

  std::vector<double> context(d), logits(v), dcontext(d);
  std::vector<std::size_t> window;
  for (const auto& ex : batch) {
    const std::size_t n = ex.tokens.size();
    for (const auto& [pos, target] : ex.targets) {
      window.clear();
      const std::size_t lo = pos >= context_radius ? pos - context_radius : 0;
      const std::size_t hi = std::min(n - 1, pos + context_radius);
      for (std::size_t j = lo; j <= hi; ++j)
        if (j != pos && ex.tokens[j] != EmbeddingTable::kMask) window.push_back(j);

      std::fill(context.begin(), context.end(), 0.0);
      for (std::size_t j : window) {
        auto e = emb.row(static_cast<std::size_t>(ex.tokens[j]));
        for (std::size_t a = 0; a < d; ++a) context[a] += e[a];
      }
      if (!window.empty())
        for (double& c : context) c /= static_cast<double>(window.size());

      for (std::size_t w = 0; w < v; ++w) {
        auto o = out.row(w);
        double z = bias[w];
        for (std::size_t a = 0; a < d; ++a) z += o[a] * context[a];
        logits[w] = z;
      }
      const double lse = log_sum_exp(logits);
      result.loss += (lse - logits[static_cast<std::size_t>(target)]) * inv_targets;
      if (!with_gradient) continue;

      std::fill(dcontext.begin(), dcontext.end(), 0.0);
      auto& g = result.gradient;
      for (std::size_t w = 0; w < v; ++w) {
        double dz = std::exp(logits[w] - lse);
        if (static_cast<int>(w) == target) dz -= 1.0;
        dz *= inv_targets;
        g.output_bias[w] += dz;
        auto o = out.row(w);
        auto go = g.output.row(w);
        for (std::size_t a = 0; a < d; ++a) {
          go[a] += dz * context[a];
          dcontext[a] += dz * o[a];
        }
      }
      if (window.empty()) continue;
      const double share = 1.0 / static_cast<double>(window.size());
      for (std::size_t j : window) {
        auto ge = g.vectors.row(static_cast<std::size_t>(ex.tokens[j]));
        for (std::size_t a = 0; a < d; ++a) ge[a] += dcontext[a] * share;
      }
    }
  }
  return result;
}

namespace {

constexpr std::uint64_t kHeldoutStream = 0x68656c646f7574ULL;  // "heldout"

std::uint64_t sentence_hash(const Sentence& s) {
  std::uint64_t h = fnv1a64("");
  for (const auto& t : s.tokens()) {
    h = fnv1a64(t, h);
    h = fnv1a64("\x1f", h);
  }
  return h;
}

// Indices of `corpus` in content order, plus each sentence's occurrence
// number among identical sentences (so duplicates get distinct masks).
struct CanonicalOrder {
  std::vector<std::size_t> order;
  std::vector<std::uint64_t> keys;  // per position in `order`
};

CanonicalOrder canonical_order(const UnlabeledCorpus& corpus) {
  CanonicalOrder c;
  c.order.resize(corpus.size());
  std::iota(c.order.begin(), c.order.end(), 0);
  std::stable_sort(c.order.begin(), c.order.end(), [&](std::size_t a, std::size_t b) {
    return corpus.sentences[a] < corpus.sentences[b];
  });
  c.keys.resize(c.order.size());
  std::uint64_t occurrence = 0;
  for (std::size_t i = 0; i < c.order.size(); ++i) {
    const auto& s = corpus.sentences[c.order[i]];
    occurrence = (i > 0 && corpus.sentences[c.order[i - 1]] == s) ? occurrence + 1 : 0;
    c.keys[i] = hash_combine(sentence_hash(s), occurrence);
  }
  return c;
}

MaskedExample mask_keyed(const EmbeddingTable& table, const Sentence& s, std::uint64_t key,
                         std::uint64_t stream, const AdaptConfig& config) {
  std::mt19937_64 rng(hash_combine(hash_combine(config.rng_seed, stream), key));
  const auto ids = table.encode(s, config.max_length);
  return mask_sequence(ids, config.mask_rate, rng);
}

void check_finite(const MlmLoss& l, const char* where) {
  if (!std::isfinite(l.loss))
    throw NumericalError(std::string("non-finite MLM loss during ") + where);
}

struct AdaGradState {
  Matrix vectors, output;
  std::vector<double> bias;
};

void adagrad_step(std::vector<double>& params, std::vector<double>& accum,
                  const std::vector<double>& grad, double lr) {
  constexpr double kEps = 1e-8;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    if (g == 0.0) continue;
    accum[i] += g * g;
    params[i] -= lr * g / (std::sqrt(accum[i]) + kEps);
  }
}

}  // namespace

double heldout_mlm_loss(const EmbeddingTable& table, const UnlabeledCorpus& heldout,
                        const AdaptConfig& config) {
  if (heldout.empty()) throw ConfigError("held-out corpus is empty");
  const auto canon = canonical_order(heldout);
  std::vector<MaskedExample> batch;
  batch.reserve(heldout.size());
  for (std::size_t i = 0; i < canon.order.size(); ++i)
    batch.push_back(mask_keyed(table, heldout.sentences[canon.order[i]], canon.keys[i],
                               kHeldoutStream, config));
  auto l = mlm_loss(table, batch, config.context_radius, false);
  check_finite(l, "evaluation");
  return l.loss;
}

AdaptResult adapt(const EmbeddingTable& table, const UnlabeledCorpus& corpus,
                  const AdaptConfig& config) {
  config.check();
  if (corpus.empty()) throw ConfigError("adaptation corpus is empty");
  const auto canon = canonical_order(corpus);
  const auto held = static_cast<std::size_t>(
      std::floor(config.heldout_fraction * static_cast<double>(corpus.size())));
  if (held == 0 || held >= corpus.size()) return adapt(table, corpus, corpus, config);

  std::vector<std::size_t> pick(canon.order);
  std::mt19937_64 rng(hash_combine(config.rng_seed, kHeldoutStream));
  std::shuffle(pick.begin(), pick.end(), rng);
  UnlabeledCorpus train, heldout;
  std::vector<char> is_held(corpus.size(), 0);
  for (std::size_t i = 0; i < held; ++i) is_held[pick[i]] = 1;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    (is_held[i] ? heldout : train).sentences.push_back(corpus.sentences[i]);
  return adapt(table, train, heldout, config);
}

AdaptResult adapt(const EmbeddingTable& table, const UnlabeledCorpus& corpus,
                  const UnlabeledCorpus& heldout, const AdaptConfig& config) {
  config.check();
  if (corpus.empty()) throw ConfigError("adaptation corpus is empty");

  AdaptResult result{table, {}};
  result.heldout_loss.push_back(heldout_mlm_loss(table, heldout, config));
  if (config.epochs == 0) return result;

  EmbeddingTable& t = result.table;
  AdaGradState acc{Matrix(t.vocab_size(), t.dim()), Matrix(t.vocab_size(), t.dim()),
                   std::vector<double>(t.vocab_size(), 0.0)};
  const auto canon = canonical_order(corpus);
  std::vector<std::size_t> visit(canon.order.size());

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(visit.begin(), visit.end(), 0);
    if (config.shuffle) {
      std::mt19937_64 rng(hash_combine(config.rng_seed, 0x5348554646ULL + epoch));
      std::shuffle(visit.begin(), visit.end(), rng);
    }
    for (std::size_t start = 0; start < visit.size(); start += config.batch_size) {
      const std::size_t stop = std::min(visit.size(), start + config.batch_size);
      std::vector<MaskedExample> batch;
      batch.reserve(stop - start);
      for (std::size_t b = start; b < stop; ++b) {
        const std::size_t c = visit[b];
        batch.push_back(mask_keyed(t, corpus.sentences[canon.order[c]], canon.keys[c],
                                   epoch + 1, config));
      }
      auto l = mlm_loss(t, batch, config.context_radius, true);
      check_finite(l, "adaptation");
      adagrad_step(t.vectors().data(), acc.vectors.data(), l.gradient.vectors.data(),
                   config.learning_rate);
      adagrad_step(t.output().data(), acc.output.data(), l.gradient.output.data(),
                   config.learning_rate);
      adagrad_step(t.output_bias(), acc.bias, l.gradient.output_bias, config.learning_rate);
    }
    result.heldout_loss.push_back(heldout_mlm_loss(t, heldout, config));
  }
  return result;
}

}  // namespace seedner
