#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <set>
#include <sstream>

#include "seedner/bootstrap.hpp"
#include "seedner/corpus.hpp"
#include "seedner/crf.hpp"
#include "seedner/error.hpp"
#include "seedner/metrics.hpp"
#include "seedner/mlm.hpp"
#include "seedner/serialize.hpp"

namespace seedner::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string required(const RunConfig& cfg, const std::string& key) {
  auto v = cfg.maybe(key);
  if (!v) throw ConfigError("missing required key '" + key + "'");
  return *v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

std::string slurp(const std::string& path) {
  auto in = open_input(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw DataError("write failed: " + path);
}

ColumnSeparator separator(const RunConfig& cfg) {
  const std::string s = cfg.str("separator", "tab");
  if (s == "tab") return ColumnSeparator::kTab;
  if (s == "space") return ColumnSeparator::kSpace;
  throw ConfigError("config key 'separator': expected tab or space, got '" + s + "'");
}

LabeledDataset parse_conll(const std::string& text, const std::string& path,
                           const ConllOptions& options) {
  std::istringstream in(text);
  try {
    return read_conll(in, options);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

// Reads several CoNLL files over one tag set: the configured entity_types, or
// the sorted union of the types found in the files.
std::vector<LabeledDataset> read_labeled(const RunConfig& cfg,
                                         const std::vector<std::string>& paths) {
  ConllOptions options;
  options.separator = separator(cfg);
  auto types = cfg.list("entity_types");
  std::vector<std::string> texts;
  for (const auto& p : paths) texts.push_back(slurp(p));
  if (types.empty()) {
    std::set<std::string> found;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      auto d = parse_conll(texts[i], paths[i], options);
      found.insert(d.tagset.entity_types().begin(), d.tagset.entity_types().end());
    }
    types.assign(found.begin(), found.end());
  }
  options.tagset = TagSet(types);
  std::vector<LabeledDataset> out;
  for (std::size_t i = 0; i < paths.size(); ++i)
    out.push_back(parse_conll(texts[i], paths[i], options));
  return out;
}

UnlabeledCorpus read_raw(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_raw_corpus(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_labeled(const std::string& path, const LabeledDataset& data, ColumnSeparator sep) {
  auto out = open_output(path);
  write_conll(out, data, sep);
  finish(out, path);
}

void write_raw(const std::string& path, const UnlabeledCorpus& corpus) {
  auto out = open_output(path);
  write_raw_corpus(out, corpus);
  finish(out, path);
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

// Tab-separated report with a header row.
class Report {
 public:
  Report(const std::string& path, std::vector<std::string> header)
      : path_(path), out_(open_output(path)), columns_(header.size()) {
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw Error("report row has the wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "\t" : "") << cells[i];
    out_ << '\n';
  }

  ~Report() { out_.flush(); }

  void close() { finish(out_, path_); }

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
};

std::map<std::string, std::string> provenance(const RunConfig& cfg, const std::string& command) {
  std::map<std::string, std::string> meta{{"command", command},
                                          {"config_fingerprint", cfg.fingerprint()},
                                          {"seedner_version", kVersion}};
  for (const auto& [k, v] : cfg.values())
    if (k.size() > 5 && k.ends_with("_seed")) meta[k] = v;
  return meta;
}

TrainConfig train_config(const RunConfig& cfg, std::size_t default_epochs) {
  TrainConfig tc;
  tc.epochs = cfg.count("epochs", default_epochs);
  tc.learning_rate = cfg.real("learning_rate", tc.learning_rate);
  tc.l2 = cfg.real("l2", tc.l2);
  tc.rng_seed = cfg.seed("train_seed", tc.rng_seed);
  tc.shuffle = cfg.flag("shuffle", tc.shuffle);
  tc.check();
  return tc;
}

AdaptConfig adapt_config(const RunConfig& cfg) {
  AdaptConfig ac;
  ac.mask_rate = cfg.real("mask_rate", ac.mask_rate);
  ac.epochs = cfg.count("adapt_epochs", ac.epochs);
  ac.learning_rate = cfg.real("adapt_learning_rate", ac.learning_rate);
  ac.context_radius = cfg.count("adapt_radius", ac.context_radius);
  ac.rng_seed = cfg.seed("adapt_seed", ac.rng_seed);
  ac.max_length = cfg.count("max_length", ac.max_length);
  ac.batch_size = cfg.count("batch_size", ac.batch_size);
  ac.heldout_fraction = cfg.real("heldout_fraction", ac.heldout_fraction);
  ac.shuffle = cfg.flag("adapt_shuffle", ac.shuffle);
  ac.check();
  return ac;
}

std::shared_ptr<const EmbeddingTable> load_table(const std::string& path) {
  auto art = load_model(path);
  if (!art.embeddings) throw DataError(path + ": file holds no embedding table");
  return art.embeddings;
}

CrfModel prototype(const RunConfig& cfg, const TagSet& tagset) {
  const std::string kind = cfg.str("scorer", "features");
  if (kind == "features") {
    const auto bits = cfg.count("hash_bits", FeatureExtractor::kDefaultHashBits);
    if (bits < 1 || bits > 30) throw ConfigError("config key 'hash_bits' must be in [1, 30]");
    return CrfModel::blank(EmissionScorer::features(tagset.size(), static_cast<unsigned>(bits)),
                           tagset);
  }
  if (kind == "embedding") {
    auto table = load_table(required(cfg, "embeddings"));
    return CrfModel::blank(
        EmissionScorer::embedding(tagset.size(), table, cfg.count("context_radius", 1)), tagset);
  }
  throw ConfigError("config key 'scorer': expected features or embedding, got '" + kind + "'");
}

BootstrapConfig bootstrap_config(const RunConfig& cfg, std::size_t default_epochs) {
  BootstrapConfig bc;
  bc.theta = cfg.real("theta", bc.theta);
  bc.max_iterations = cfg.count("iterations", bc.max_iterations);
  bc.train = train_config(cfg, default_epochs);
  const std::string conf = cfg.str("confidence", "softmax");
  if (conf == "softmax") {
    bc.confidence_mode = ConfidenceMode::kSoftmax;
  } else if (conf == "marginal") {
    bc.confidence_mode = ConfidenceMode::kMarginal;
  } else {
    throw ConfigError("config key 'confidence': expected softmax or marginal, got '" + conf + "'");
  }
  const std::string from = cfg.str("retrain_from", "scratch");
  if (from == "scratch") {
    bc.retrain_from = RetrainFrom::kScratch;
  } else if (from == "previous") {
    bc.retrain_from = RetrainFrom::kPrevious;
  } else {
    throw ConfigError("config key 'retrain_from': expected scratch or previous, got '" + from +
                      "'");
  }
  if (cfg.has("early_stop_patience") || cfg.has("early_stop_min_delta")) {
    EarlyStop es;
    es.patience = cfg.count("early_stop_patience", es.patience);
    es.min_delta = cfg.real("early_stop_min_delta", es.min_delta);
    bc.early_stop = es;
  }
  bc.threads = cfg.count("threads", bc.threads);
  return bc;
}

// Seed set, optional dev and test sets, and the unlabeled corpus of a
// bootstrap or sweep run.
struct BootstrapInputs {
  LabeledDataset seed;
  std::optional<LabeledDataset> dev;
  std::optional<LabeledDataset> test;
  UnlabeledCorpus corpus;
};

BootstrapInputs bootstrap_inputs(const RunConfig& cfg, bool need_dev) {
  std::vector<std::string> paths{required(cfg, "seed")};
  const auto dev = need_dev ? std::optional(required(cfg, "dev")) : cfg.maybe("dev");
  const auto test = cfg.maybe("test");
  if (dev) paths.push_back(*dev);
  if (test) paths.push_back(*test);
  auto sets = read_labeled(cfg, paths);
  BootstrapInputs in;
  in.seed = std::move(sets[0]);
  std::size_t next = 1;
  if (dev) in.dev = std::move(sets[next++]);
  if (test) in.test = std::move(sets[next++]);
  in.corpus = read_raw(required(cfg, "corpus"));
  if (in.seed.empty()) throw DataError(paths[0] + ": seed set is empty");
  return in;
}

std::size_t bootstrap_epochs(const BootstrapInputs& in) {
  const double ratio = static_cast<double>(in.seed.size()) /
                       static_cast<double>(in.seed.size() + in.corpus.size());
  return default_epochs(ratio);
}

std::vector<std::string> score_cells(const std::optional<Scores>& s) {
  if (!s) return {"NA", "NA", "NA"};
  return {fixed(s->precision), fixed(s->recall), fixed(s->f1)};
}

}  // namespace

void run_split(const RunConfig& cfg) {
  const auto data = read_labeled(cfg, {required(cfg, "input")}).front();
  const auto split = split_seed(data, cfg.real("seed_ratio", 0.1), cfg.seed("split_seed", 1));
  const auto sep = separator(cfg);
  write_labeled(required(cfg, "seed_out"), split.seed, sep);
  write_raw(required(cfg, "corpus_out"), split.remainder);
  if (auto path = cfg.maybe("remainder_out")) {
    LabeledDataset rest{data.tagset, {}};
    std::size_t next = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (next < split.seed_indices.size() && split.seed_indices[next] == i) {
        ++next;
        continue;
      }
      rest.items.push_back(data.items[i]);
    }
    write_labeled(*path, rest, sep);
  }
  std::cout << "seed\t" << split.seed.size() << "\ncorpus\t" << split.remainder.size() << '\n';
}

void run_train(const RunConfig& cfg) {
  std::vector<std::string> paths{required(cfg, "train")};
  const auto dev_path = cfg.maybe("dev");
  if (dev_path) paths.push_back(*dev_path);
  const auto sets = read_labeled(cfg, paths);
  const auto& data = sets[0];
  if (data.empty()) throw DataError(paths[0] + ": training set is empty");

  const auto result = train(data.items, train_config(cfg, 10), prototype(cfg, data.tagset));
  save_model(result.model, required(cfg, "model_out"), provenance(cfg, "train"));

  if (auto path = cfg.maybe("report")) {
    Report report(*path, {"epoch", "loss"});
    for (std::size_t e = 0; e < result.epoch_loss.size(); ++e)
      report.row({std::to_string(e + 1), fixed(result.epoch_loss[e])});
    report.close();
  }
  std::cout << "final_loss\t" << fixed(result.epoch_loss.back()) << '\n';
  if (dev_path) {
    const auto s = evaluate(result.model, sets[1], cfg.count("threads", 1));
    std::cout << "dev_precision\t" << fixed(s.precision) << "\ndev_recall\t" << fixed(s.recall)
              << "\ndev_f1\t" << fixed(s.f1) << '\n';
  }
}

void run_adapt(const RunConfig& cfg) {
  const auto corpus = read_raw(required(cfg, "corpus"));
  if (corpus.empty()) throw DataError("adaptation corpus is empty");
  EmbeddingTable table;
  if (auto path = cfg.maybe("embeddings")) {
    table = *load_table(*path);
  } else {
    table = EmbeddingTable::create(corpus_vocabulary(corpus), cfg.count("embedding_dim", 32),
                                   cfg.seed("embedding_seed", 1));
  }
  const auto config = adapt_config(cfg);
  const auto result = cfg.maybe("heldout")
                          ? adapt(table, corpus, read_raw(*cfg.maybe("heldout")), config)
                          : adapt(table, corpus, config);
  save_embeddings(result.table, required(cfg, "embeddings_out"), provenance(cfg, "adapt"));

  if (auto path = cfg.maybe("report")) {
    Report report(*path, {"epoch", "heldout_loss"});
    for (std::size_t e = 0; e < result.heldout_loss.size(); ++e)
      report.row({std::to_string(e), fixed(result.heldout_loss[e])});
    report.close();
  }
  std::cout << "heldout_loss_initial\t" << fixed(result.heldout_loss.front())
            << "\nheldout_loss_final\t" << fixed(result.heldout_loss.back()) << '\n';
}

void run_bootstrap(const RunConfig& cfg) {
  auto in = bootstrap_inputs(cfg, false);
  auto config = bootstrap_config(cfg, bootstrap_epochs(in));
  config.dev_set = in.dev;
  config.test_set = in.test;
  const auto result = bootstrap_run(in.seed, in.corpus, config, prototype(cfg, in.seed.tagset));

  auto meta = provenance(cfg, "bootstrap");
  meta["iterations_run"] = std::to_string(result.history.size() - 1);
  save_model(result.model, required(cfg, "model_out"), meta);

  const bool has_dev = in.dev.has_value();
  const bool both = has_dev && in.test.has_value();
  auto primary = [&](const IterationRecord& r) { return has_dev ? r.dev : r.test; };

  if (auto path = cfg.maybe("history_report")) {
    std::vector<std::string> header{"iteration", "precision", "recall", "f1", "weak_nonO_count"};
    if (both) header.insert(header.end(), {"test_precision", "test_recall", "test_f1"});
    Report report(*path, header);
    for (const auto& r : result.history) {
      std::vector<std::string> row{std::to_string(r.index)};
      for (auto& c : score_cells(primary(r))) row.push_back(c);
      row.push_back(std::to_string(r.weak_non_o));
      if (both)
        for (auto& c : score_cells(r.test)) row.push_back(c);
      report.row(row);
    }
    report.close();
  }

  std::cout << "iterations\t" << result.history.size() - 1 << '\n';
  if (has_dev || in.test) {
    std::vector<Scores> scores;
    for (const auto& r : result.history) scores.push_back(*primary(r));
    const char* label = has_dev ? "dev" : "test";
    std::cout << label << "_f1_iteration0\t" << fixed(scores.front().f1) << '\n'
              << label << "_f1_last5\t" << fixed(average_last(scores, 5).f1) << '\n';
  }
}

void run_predict(const RunConfig& cfg) {
  const std::string model_path = required(cfg, "model");
  const auto art = load_model(model_path);
  if (!art.model) throw DataError(model_path + ": file holds embeddings, not a tagger");
  const CrfModel& model = *art.model;

  const std::string input = required(cfg, "input");
  const std::string format = cfg.str("input_format", "conll");
  std::vector<Sentence> sentences;
  if (format == "conll") {
    ConllOptions options;
    options.separator = separator(cfg);
    for (auto& item : parse_conll(slurp(input), input, options).items)
      sentences.push_back(std::move(item.sentence));
  } else if (format == "raw") {
    sentences = read_raw(input).sentences;
  } else {
    throw ConfigError("config key 'input_format': expected conll or raw, got '" + format + "'");
  }

  auto tags = predict_all(model, sentences, cfg.count("threads", 1));
  LabeledDataset out{model.tagset(), {}};
  out.items.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i)
    out.items.push_back({std::move(sentences[i]), std::move(tags[i])});
  write_labeled(required(cfg, "output"), out, separator(cfg));
}

void run_eval(const RunConfig& cfg) {
  const std::string gold_path = required(cfg, "gold");
  const std::string pred_path = required(cfg, "pred");
  const auto sets = read_labeled(cfg, {gold_path, pred_path});
  const auto& gold = sets[0];
  const auto& pred = sets[1];
  if (gold.size() != pred.size())
    throw DataError("sentence count differs: " + gold_path + " has " +
                    std::to_string(gold.size()) + ", " + pred_path + " has " +
                    std::to_string(pred.size()));
  std::vector<TagSequence> g, p;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold.items[i].sentence != pred.items[i].sentence)
      throw DataError("sentence " + std::to_string(i + 1) + " differs between " + gold_path +
                      " and " + pred_path);
    g.push_back(gold.items[i].tags);
    p.push_back(pred.items[i].tags);
  }
  const auto s = micro_prf(g, p, gold.tagset);
  std::cout << "precision\t" << fixed(s.precision) << "\nrecall\t" << fixed(s.recall) << "\nf1\t"
            << fixed(s.f1) << "\ntp\t" << s.tp << "\nfp\t" << s.fp << "\nfn\t" << s.fn << '\n';
  if (auto path = cfg.maybe("report")) {
    const auto record = to_record(s);
    std::vector<std::string> header, row;
    for (const auto& [k, v] : record) {
      header.push_back(k);
      row.push_back(v);
    }
    Report report(*path, header);
    report.row(row);
    report.close();
  }
}

void run_synth(const RunConfig& cfg) {
  SyntheticSpec spec;
  spec.sentences = cfg.count("sentences", spec.sentences);
  spec.vocab_size = cfg.count("vocab_size", spec.vocab_size);
  if (auto types = cfg.list("entity_types"); !types.empty()) spec.entity_types = types;
  spec.min_length = cfg.count("min_length", spec.min_length);
  spec.max_length = cfg.count("max_length", spec.max_length);
  spec.entity_rate = cfg.real("entity_rate", spec.entity_rate);
  spec.rng_seed = cfg.seed("synth_seed", spec.rng_seed);
  spec.domain = static_cast<std::uint32_t>(cfg.count("domain", spec.domain));
  spec.trigger_rate = cfg.real("trigger_rate", spec.trigger_rate);
  const auto data = generate_synthetic(spec);
  write_labeled(required(cfg, "output"), data, separator(cfg));
  if (auto path = cfg.maybe("raw_output")) write_raw(*path, strip_labels(data));
  std::cout << "sentences\t" << data.size() << '\n';
}

void run_sweep(const RunConfig& cfg) {
  auto in = bootstrap_inputs(cfg, true);
  auto config = bootstrap_config(cfg, bootstrap_epochs(in));
  config.test_set.reset();
  auto thetas = cfg.reals("thetas");
  if (thetas.empty())
    for (int i = 0; i <= 10; ++i) thetas.push_back(i / 10.0);
  const auto points = sweep_theta(in.seed, in.corpus, *in.dev, thetas, config,
                                  prototype(cfg, in.seed.tagset));

  std::optional<Report> report;
  if (auto path = cfg.maybe("sweep_report"))
    report.emplace(*path, std::vector<std::string>{"theta", "precision", "recall", "f1"});
  const ThetaPoint* best = nullptr;
  for (const auto& pt : points) {
    if (report)
      report->row({fixed(pt.theta), fixed(pt.dev.precision), fixed(pt.dev.recall),
                   fixed(pt.dev.f1)});
    if (!best || pt.dev.f1 > best->dev.f1) best = &pt;
  }
  if (report) report->close();
  std::cout << "best_theta\t" << fixed(best->theta) << "\nbest_dev_f1\t" << fixed(best->dev.f1)
            << '\n';
}

namespace {

const std::vector<KeySpec> kFormatKeys = {
    {"separator", "CoNLL column separator: tab or space"},
    {"entity_types", "comma-separated entity types; inferred from the data when unset"},
};

const std::vector<KeySpec> kScorerKeys = {
    {"scorer", "emission scorer: features or embedding"},
    {"hash_bits", "feature hash space is 2^hash_bits"},
    {"embeddings", "embedding table file for the embedding scorer"},
    {"context_radius", "neighbour window of the embedding scorer"},
};

const std::vector<KeySpec> kTrainKeys = {
    {"epochs", "training epochs"},
    {"learning_rate", "AdaGrad step size"},
    {"l2", "L2 penalty"},
    {"train_seed", "shuffling seed"},
    {"shuffle", "shuffle sentences every epoch (true/false)"},
};

const std::vector<KeySpec> kBootstrapKeys = {
    {"corpus", "unlabeled raw-text corpus"},
    {"seed", "seed set (CoNLL)"},
    {"dev", "development set (CoNLL)"},
    {"theta", "confidence threshold for weak labels"},
    {"iterations", "maximum bootstrap iterations"},
    {"confidence", "softmax or marginal"},
    {"retrain_from", "scratch or previous"},
    {"early_stop_patience", "stop after this many iterations without dev gain"},
    {"early_stop_min_delta", "smallest dev F1 change counted as a gain"},
    {"threads", "prediction threads"},
};

const std::vector<KeySpec> kAdaptKeys = {
    {"mask_rate", "fraction of masked positions"},
    {"adapt_epochs", "MLM epochs"},
    {"adapt_learning_rate", "MLM AdaGrad step size"},
    {"adapt_radius", "MLM context radius"},
    {"adapt_seed", "masking seed"},
    {"max_length", "truncate sentences to this many tokens"},
    {"batch_size", "sentences per update"},
    {"heldout_fraction", "share of the corpus held out"},
    {"adapt_shuffle", "shuffle batches every epoch (true/false)"},
    {"embedding_dim", "dimension of a freshly created table"},
    {"embedding_seed", "initialisation seed of a fresh table"},
};

std::vector<KeySpec> join(std::initializer_list<std::vector<KeySpec>> parts) {
  std::vector<KeySpec> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"split", "split a labelled file into a seed set and an unlabeled corpus",
       join({{{"input", "labelled CoNLL file"},
              {"seed_ratio", "fraction of sentences kept as seed"},
              {"split_seed", "sampling seed"},
              {"seed_out", "seed set output (CoNLL)"},
              {"corpus_out", "corpus output (raw text)"},
              {"remainder_out", "remaining sentences with gold tags (CoNLL)"}},
             kFormatKeys}),
       run_split},
      {"train", "train a supervised CRF tagger",
       join({{{"train", "training set (CoNLL)"},
              {"dev", "development set (CoNLL)"},
              {"model_out", "model output file"},
              {"report", "per-epoch loss report (TSV)"},
              {"threads", "prediction threads"}},
             kTrainKeys, kScorerKeys, kFormatKeys}),
       run_train},
      {"adapt", "adapt word embeddings to a corpus with masked-token prediction",
       join({{{"corpus", "raw-text corpus"},
              {"heldout", "held-out raw-text corpus"},
              {"embeddings", "starting embedding table"},
              {"embeddings_out", "adapted table output file"},
              {"report", "held-out loss report (TSV)"}},
             kAdaptKeys}),
       run_adapt},
      {"bootstrap", "self-train from a seed set and an unlabeled corpus",
       join({kBootstrapKeys,
             {{"test", "test set (CoNLL)"},
              {"model_out", "final model output file"},
              {"history_report", "per-iteration report (TSV)"}},
             kTrainKeys, kScorerKeys, kFormatKeys}),
       run_bootstrap},
      {"predict", "tag a file with a trained model",
       join({{{"model", "model file"},
              {"input", "sentences to tag"},
              {"input_format", "conll or raw"},
              {"output", "tagged output (CoNLL)"},
              {"threads", "prediction threads"},
              {"separator", "CoNLL column separator: tab or space"}}}),
       run_predict},
      {"eval", "span micro-F1 of a prediction file against gold",
       join({{{"gold", "gold CoNLL file"},
              {"pred", "predicted CoNLL file"},
              {"report", "score report (TSV)"}},
             kFormatKeys}),
       run_eval},
      {"synth", "generate a synthetic labelled corpus",
       {{"output", "output CoNLL file"},
        {"raw_output", "also write the tokens as raw text"},
        {"sentences", "number of sentences"},
        {"vocab_size", "lexicon size"},
        {"entity_types", "comma-separated entity types"},
        {"min_length", "shortest sentence"},
        {"max_length", "longest sentence"},
        {"entity_rate", "expected fraction of entity tokens"},
        {"trigger_rate", "probability of a cue word before an entity"},
        {"domain", "entity vocabulary block"},
        {"synth_seed", "generator seed"},
        {"separator", "CoNLL column separator: tab or space"}},
       run_synth},
      {"sweep", "bootstrap once per threshold and report dev scores",
       join({kBootstrapKeys,
             {{"thetas", "comma-separated thresholds (default 0,0.1,...,1)"},
              {"sweep_report", "threshold report (TSV)"}},
             kTrainKeys, kScorerKeys, kFormatKeys}),
       run_sweep},
  };
  return table;
}

}  // namespace seedner::cli
