#include "seedner/crf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

#include "seedner/error.hpp"
#include "seedner/hash.hpp"
#include "seedner/parallel.hpp"

namespace seedner {

TransitionModel::TransitionModel(std::size_t num_tags, Matrix a) : k_(num_tags), a_(std::move(a)) {
  if (a_.rows() != k_ + 2 || a_.cols() != k_ + 2)
    throw DataError("transition matrix must be " + std::to_string(k_ + 2) + "x" +
                    std::to_string(k_ + 2));
}

CrfModel::CrfModel(EmissionScorer scorer, TransitionModel transitions, TagSet tagset)
    : scorer_(std::move(scorer)), trans_(std::move(transitions)), tagset_(std::move(tagset)) {
  if (scorer_.num_tags() != tagset_.size() || trans_.num_tags() != tagset_.size())
    throw DataError("model dimensions do not match the tag set (K = " +
                    std::to_string(tagset_.size()) + ")");
}

CrfModel CrfModel::blank(EmissionScorer scorer, TagSet tagset) {
  TransitionModel t(tagset.size());
  return CrfModel(std::move(scorer), std::move(t), std::move(tagset));
}

std::size_t CrfModel::parameter_count() const {
  return scorer_.weights().size() + trans_.matrix().size();
}

double CrfModel::parameter(std::size_t j) const {
  const std::size_t w = scorer_.weights().size();
  return j < w ? scorer_.weights().data()[j] : trans_.matrix().data().at(j - w);
}

void CrfModel::set_parameter(std::size_t j, double value) {
  const std::size_t w = scorer_.weights().size();
  if (j < w)
    scorer_.weights().data()[j] = value;
  else
    trans_.matrix().data().at(j - w) = value;
}

bool same_parameters(const CrfModel& a, const CrfModel& b) {
  return a.tagset() == b.tagset() && a.scorer().kind() == b.scorer().kind() &&
         a.scorer().weights() == b.scorer().weights() && a.transitions() == b.transitions();
}

namespace {

void check_shapes(const EmissionMatrix& e, const TransitionModel& t) {
  if (e.length() == 0) throw ConfigError("CRF inference needs a non-empty sequence");
  if (e.num_tags() != t.num_tags())
    throw ConfigError("emission and transition tag counts differ");
}

void check_tags(const TagSequence& y, const EmissionMatrix& e) {
  if (y.size() != e.length()) throw ConfigError("tag sequence length differs from sentence");
  for (Tag tag : y)
    if (tag < 0 || static_cast<std::size_t>(tag) >= e.num_tags())
      throw ConfigError("tag index out of range: " + std::to_string(tag));
}

struct Lattice {
  Matrix alpha;  // alpha(i, j): log-sum of prefixes ending in j at i
  Matrix beta;   // beta(i, j): log-sum of suffixes after j at i, including END
  double log_z = 0.0;
};

Lattice forward_backward(const EmissionMatrix& e, const TransitionModel& t) {
  const std::size_t n = e.length(), k = e.num_tags();
  Lattice lat{Matrix(n, k), Matrix(n, k), 0.0};
  std::vector<double> buf(k);

  for (std::size_t j = 0; j < k; ++j) lat.alpha(0, j) = t.start(j) + e.scores(0, j);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t p = 0; p < k; ++p) buf[p] = lat.alpha(i - 1, p) + t.transition(p, j);
      lat.alpha(i, j) = e.scores(i, j) + log_sum_exp(buf);
    }
  for (std::size_t j = 0; j < k; ++j) buf[j] = lat.alpha(n - 1, j) + t.end(j);
  lat.log_z = log_sum_exp(buf);

  for (std::size_t j = 0; j < k; ++j) lat.beta(n - 1, j) = t.end(j);
  for (std::size_t i = n - 1; i-- > 0;)
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t q = 0; q < k; ++q)
        buf[q] = t.transition(j, q) + e.scores(i + 1, q) + lat.beta(i + 1, q);
      lat.beta(i, j) = log_sum_exp(buf);
    }
  return lat;
}

Matrix node_marginals(const Lattice& lat) {
  Matrix m(lat.alpha.rows(), lat.alpha.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      m(i, j) = std::exp(lat.alpha(i, j) + lat.beta(i, j) - lat.log_z);
  return m;
}

// Loss and derivatives of -log p(y|X) for one sentence, with respect to the
// emission scores (n x K) and the transition matrix ((K+2) x (K+2)).
struct SentenceGradient {
  double nll = 0.0;
  Matrix dscores;
  Matrix dtrans;
};

SentenceGradient sentence_gradient(const EmissionMatrix& e, const TransitionModel& t,
                                   const TagSequence& gold) {
  check_shapes(e, t);
  check_tags(gold, e);
  const std::size_t n = e.length(), k = e.num_tags();
  const Lattice lat = forward_backward(e, t);

  SentenceGradient g{lat.log_z - path_score(gold, e, t), node_marginals(lat),
                     Matrix(k + 2, k + 2)};
  for (std::size_t i = 0; i < n; ++i) g.dscores(i, static_cast<std::size_t>(gold[i])) -= 1.0;

  for (std::size_t j = 0; j < k; ++j) {
    g.dtrans(k, j) += std::exp(lat.alpha(0, j) + lat.beta(0, j) - lat.log_z);
    g.dtrans(j, k + 1) += std::exp(lat.alpha(n - 1, j) + lat.beta(n - 1, j) - lat.log_z);
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        g.dtrans(a, b) += std::exp(lat.alpha(i, a) + t.transition(a, b) + e.scores(i + 1, b) +
                                   lat.beta(i + 1, b) - lat.log_z);

  g.dtrans(k, static_cast<std::size_t>(gold.front())) -= 1.0;
  g.dtrans(static_cast<std::size_t>(gold.back()), k + 1) -= 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    g.dtrans(static_cast<std::size_t>(gold[i]), static_cast<std::size_t>(gold[i + 1])) -= 1.0;
  return g;
}

double squared_norm(const CrfModel& m) {
  double s = 0.0;
  for (double x : m.scorer().weights().data()) s += x * x;
  for (double x : m.transitions().matrix().data()) s += x * x;
  return s;
}

}  // namespace

double path_score(const TagSequence& y, const EmissionMatrix& e, const TransitionModel& t) {
  check_shapes(e, t);
  check_tags(y, e);
  const auto at = [&](std::size_t i) { return static_cast<std::size_t>(y[i]); };
  double s = t.start(at(0)) + t.end(at(y.size() - 1));
  for (std::size_t i = 0; i < y.size(); ++i) s += e.scores(i, at(i));
  for (std::size_t i = 0; i + 1 < y.size(); ++i) s += t.transition(at(i), at(i + 1));
  return s;
}

double log_partition(const EmissionMatrix& e, const TransitionModel& t) {
  check_shapes(e, t);
  const std::size_t n = e.length(), k = e.num_tags();
  std::vector<double> alpha(k), next(k), buf(k);
  for (std::size_t j = 0; j < k; ++j) alpha[j] = t.start(j) + e.scores(0, j);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t p = 0; p < k; ++p) buf[p] = alpha[p] + t.transition(p, j);
      next[j] = e.scores(i, j) + log_sum_exp(buf);
    }
    alpha.swap(next);
  }
  for (std::size_t j = 0; j < k; ++j) buf[j] = alpha[j] + t.end(j);
  return log_sum_exp(buf);
}

double sequence_log_prob(const TagSequence& y, const EmissionMatrix& e, const TransitionModel& t) {
  return path_score(y, e, t) - log_partition(e, t);
}

ViterbiResult viterbi(const EmissionMatrix& e, const TransitionModel& t) {
  check_shapes(e, t);
  const std::size_t n = e.length(), k = e.num_tags();
  Matrix delta(n, k);
  std::vector<std::size_t> back(n * k, 0);
  for (std::size_t j = 0; j < k; ++j) delta(0, j) = t.start(j) + e.scores(0, j);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t best = 0;
      double best_score = delta(i - 1, 0) + t.transition(0, j);
      for (std::size_t p = 1; p < k; ++p) {
        const double s = delta(i - 1, p) + t.transition(p, j);
        if (s > best_score) {
          best_score = s;
          best = p;
        }
      }
      delta(i, j) = best_score + e.scores(i, j);
      back[i * k + j] = best;
    }

  std::size_t last = 0;
  double best_score = delta(n - 1, 0) + t.end(0);
  for (std::size_t j = 1; j < k; ++j) {
    const double s = delta(n - 1, j) + t.end(j);
    if (s > best_score) {
      best_score = s;
      last = j;
    }
  }
  ViterbiResult r{TagSequence(n), best_score};
  r.tags[n - 1] = static_cast<Tag>(last);
  for (std::size_t i = n - 1; i > 0; --i) {
    last = back[i * k + last];
    r.tags[i - 1] = static_cast<Tag>(last);
  }
  return r;
}

Matrix marginals(const EmissionMatrix& e, const TransitionModel& t) {
  check_shapes(e, t);
  return node_marginals(forward_backward(e, t));
}

NllResult nll_and_gradient(std::span<const LabeledSentence> batch, const CrfModel& model,
                           double l2) {
  if (batch.empty()) throw ConfigError("nll_and_gradient needs a non-empty batch");
  const std::size_t k = model.num_tags();
  const std::size_t wsize = model.scorer().weights().size();
  NllResult r{0.0, std::vector<double>(model.parameter_count(), 0.0)};

  for (const auto& ex : batch) {
    const auto inputs = model.scorer().inputs(ex.sentence);
    const auto e = model.scorer().score(inputs);
    const auto g = sentence_gradient(e, model.transitions(), ex.tags);
    r.loss += g.nll;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      for (const auto& [idx, value] : inputs[i])
        for (std::size_t t = 0; t < k; ++t) r.gradient[idx * k + t] += value * g.dscores(i, t);
    const auto& dt = g.dtrans.data();
    for (std::size_t j = 0; j < dt.size(); ++j) r.gradient[wsize + j] += dt[j];
  }
  if (l2 != 0.0) {
    r.loss += 0.5 * l2 * squared_norm(model);
    for (std::size_t j = 0; j < r.gradient.size(); ++j) r.gradient[j] += l2 * model.parameter(j);
  }
  return r;
}

void TrainConfig::check() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (!(l2 >= 0.0)) throw ConfigError("l2 must be non-negative");
}

std::size_t default_epochs(double seed_ratio) {
  if (seed_ratio <= 0.10 + 1e-12) return 30;
  if (seed_ratio <= 0.30 + 1e-12) return 20;
  return 10;
}

namespace {

class AdaGrad {
 public:
  AdaGrad(std::size_t emission_params, std::size_t transition_params, double lr)
      : w_(emission_params, 0.0), t_(transition_params, 0.0), lr_(lr) {}

  void step_emission(double& param, std::size_t j, double g) { step(param, w_[j], g); }
  void step_transition(double& param, std::size_t j, double g) { step(param, t_[j], g); }

 private:
  void step(double& param, double& acc, double g) {
    if (g == 0.0) return;
    acc += g * g;
    param -= lr_ * g / (std::sqrt(acc) + 1e-8);
  }

  std::vector<double> w_, t_;
  double lr_;
};

double objective(std::span<const LabeledSentence> data,
                 const std::vector<std::vector<TokenInput>>& inputs, const CrfModel& model,
                 double l2) {
  double loss = 0.5 * l2 * squared_norm(model);
  for (std::size_t s = 0; s < data.size(); ++s) {
    const auto e = model.scorer().score(inputs[s]);
    loss -= sequence_log_prob(data[s].tags, e, model.transitions());
  }
  return loss;
}

}  // namespace

TrainResult train(std::span<const LabeledSentence> data, const TrainConfig& config,
                  CrfModel init) {
  config.check();
  if (data.empty()) throw ConfigError("cannot train on an empty dataset");

  TrainResult result{std::move(init), {}};
  CrfModel& model = result.model;
  const std::size_t k = model.num_tags();
  for (std::size_t s = 0; s < data.size(); ++s) {
    if (data[s].sentence.empty() || data[s].sentence.size() != data[s].tags.size())
      throw DataError("training sentence " + std::to_string(s) + " has mismatched tags");
    for (Tag t : data[s].tags)
      if (!model.tagset().contains(t))
        throw DataError("training sentence " + std::to_string(s) + " has an unknown tag");
  }

  std::vector<std::vector<TokenInput>> inputs(data.size());
  for (std::size_t s = 0; s < data.size(); ++s) inputs[s] = model.scorer().inputs(data[s].sentence);

  Matrix& weights = model.scorer().weights();
  auto& trans = model.transitions().matrix().data();
  AdaGrad opt(weights.size(), trans.size(), config.learning_rate);

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::unordered_map<std::uint32_t, std::size_t> row_slot;
  std::vector<std::uint32_t> rows;
  std::vector<double> row_grad;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.shuffle) {
      std::mt19937_64 rng(hash_combine(config.rng_seed, epoch));
      std::shuffle(order.begin(), order.end(), rng);
    }
    for (std::size_t s : order) {
      const auto e = model.scorer().score(inputs[s]);
      const auto g = sentence_gradient(e, model.transitions(), data[s].tags);
      if (!std::isfinite(g.nll))
        throw NumericalError("non-finite loss at epoch " + std::to_string(epoch + 1) +
                             ", sentence " + std::to_string(s));

      // Gather the emission gradient by weight row so repeated features
      // within a sentence receive a single AdaGrad update.
      row_slot.clear();
      rows.clear();
      row_grad.clear();
      for (std::size_t i = 0; i < inputs[s].size(); ++i)
        for (const auto& [idx, value] : inputs[s][i]) {
          auto [it, fresh] = row_slot.try_emplace(idx, rows.size());
          if (fresh) {
            rows.push_back(idx);
            row_grad.resize(row_grad.size() + k, 0.0);
          }
          double* gr = row_grad.data() + it->second * k;
          for (std::size_t t = 0; t < k; ++t) gr[t] += value * g.dscores(i, t);
        }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        auto w = weights.row(rows[r]);
        for (std::size_t t = 0; t < k; ++t)
          opt.step_emission(w[t], rows[r] * k + t, row_grad[r * k + t] + config.l2 * w[t]);
      }
      const auto& dt = g.dtrans.data();
      for (std::size_t j = 0; j < dt.size(); ++j)
        opt.step_transition(trans[j], j, dt[j] + (dt[j] != 0.0 ? config.l2 * trans[j] : 0.0));
    }
    const double loss = objective(data, inputs, model, config.l2);
    if (!std::isfinite(loss))
      throw NumericalError("non-finite training loss after epoch " + std::to_string(epoch + 1));
    result.epoch_loss.push_back(loss);
  }
  return result;
}

Prediction predict_with_confidence(const CrfModel& model, const Sentence& sentence,
                                   ConfidenceMode mode) {
  const auto e = model.emissions(sentence);
  Prediction p;
  p.tags = viterbi(e, model.transitions()).tags;
  const Matrix conf = mode == ConfidenceMode::kSoftmax ? e.probs : marginals(e, model.transitions());
  p.confidence.resize(p.tags.size());
  for (std::size_t i = 0; i < p.tags.size(); ++i)
    p.confidence[i] = conf(i, static_cast<std::size_t>(p.tags[i]));
  return p;
}

TagSequence predict(const CrfModel& model, const Sentence& sentence) {
  return viterbi(model.emissions(sentence), model.transitions()).tags;
}

std::vector<TagSequence> predict_all(const CrfModel& model, const std::vector<Sentence>& sentences,
                                     std::size_t threads) {
  std::vector<TagSequence> out(sentences.size());
  parallel_for(sentences.size(), threads,
               [&](std::size_t i) { out[i] = predict(model, sentences[i]); });
  return out;
}

}  // namespace seedner
