#include "seedner/serialize.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "seedner/hash.hpp"

namespace seedner {

namespace {

using Kind = ModelFormatError::Kind;

constexpr char kMagic[4] = {'S', 'N', 'E', 'R'};
constexpr std::size_t kHeaderSize = 16;
constexpr std::size_t kTrailerSize = 8;

enum RecordTag : std::uint32_t {
  kMetadata = 1,
  kArtifactKind = 2,
  kTagSet = 3,
  kScorer = 4,
  kTransitions = 5,
  kEmbeddingTable = 6,
};

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
  }
  void bytes(std::string_view s) { buf_.append(s); }
  void record(std::uint32_t tag, const Writer& body) {
    u32(tag);
    u64(body.buf_.size());
    buf_.append(body.buf_);
  }
  const std::string& data() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  bool done() const { return pos_ == data_.size(); }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{u8()} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{u8()} << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint32_t n = u32();
    return std::string(take(n));
  }
  std::string_view take(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n)
      throw ModelFormatError(Kind::kIntegrity, "model record is shorter than its contents");
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

void write_matrix(Writer& w, const Matrix& m) {
  for (double x : m.data()) w.f64(x);
}

Matrix read_matrix(Reader& r, std::uint64_t rows, std::uint64_t cols) {
  Matrix m(rows, cols);
  for (double& x : m.data()) x = r.f64();
  return m;
}

Writer tagset_record(const TagSet& tagset) {
  Writer w;
  w.u32(static_cast<std::uint32_t>(tagset.type_count()));
  for (const auto& t : tagset.entity_types()) w.str(t);
  return w;
}

Writer scorer_record(const EmissionScorer& s) {
  Writer w;
  w.u8(static_cast<std::uint8_t>(s.kind()));
  w.u32(s.hash_bits());
  w.u32(static_cast<std::uint32_t>(s.context_radius()));
  const Matrix& m = s.weights();
  w.u64(m.rows());
  w.u64(m.cols());
  // Rows whose bits are all zero are omitted.
  std::vector<std::uint64_t> live;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    if (std::any_of(row.begin(), row.end(),
                    [](double x) { return std::bit_cast<std::uint64_t>(x) != 0; }))
      live.push_back(r);
  }
  w.u64(live.size());
  for (auto r : live) {
    w.u64(r);
    for (double x : m.row(r)) w.f64(x);
  }
  return w;
}

Writer embedding_record(const EmbeddingTable& t) {
  Writer w;
  w.u32(static_cast<std::uint32_t>(t.vocab_size()));
  for (const auto& word : t.vocab()) w.str(word);
  w.u64(t.dim());
  write_matrix(w, t.vectors());
  write_matrix(w, t.output());
  for (double b : t.output_bias()) w.f64(b);
  return w;
}

struct ScorerRecord {
  ScorerKind kind;
  unsigned hash_bits;
  std::size_t radius;
  Matrix weights;
};

ScorerRecord read_scorer(Reader& r) {
  ScorerRecord s;
  const auto kind = r.u8();
  if (kind > 1) throw ModelFormatError(Kind::kIntegrity, "unknown scorer kind");
  s.kind = static_cast<ScorerKind>(kind);
  s.hash_bits = r.u32();
  s.radius = r.u32();
  const auto rows = r.u64(), cols = r.u64();
  if (rows > (std::uint64_t{1} << 31) || cols > 4096)
    throw ModelFormatError(Kind::kDimension, "scorer weight shape is implausible");
  s.weights = Matrix(rows, cols);
  const auto live = r.u64();
  for (std::uint64_t i = 0; i < live; ++i) {
    const auto row = r.u64();
    if (row >= rows) throw ModelFormatError(Kind::kDimension, "scorer row index out of range");
    for (double& x : s.weights.row(row)) x = r.f64();
  }
  return s;
}

std::shared_ptr<const EmbeddingTable> read_embeddings(Reader& r) {
  const auto v = r.u32();
  std::vector<std::string> vocab(v);
  for (auto& word : vocab) word = r.str();
  const auto d = r.u64();
  if (d > 65536) throw ModelFormatError(Kind::kDimension, "embedding dimension is implausible");
  Matrix vectors = read_matrix(r, v, d);
  Matrix output = read_matrix(r, v, d);
  std::vector<double> bias(v);
  for (double& b : bias) b = r.f64();
  try {
    return std::make_shared<const EmbeddingTable>(EmbeddingTable::from_parts(
        std::move(vocab), std::move(vectors), std::move(output), std::move(bias)));
  } catch (const Error& e) {
    throw ModelFormatError(Kind::kDimension, e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ModelFormatError(Kind::kIo, "cannot open for writing: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ModelFormatError(Kind::kIo, "write failed: " + path.string());
}

}  // namespace

std::string serialize(const ModelArtifact& a) {
  Writer payload;
  {
    Writer meta;
    meta.u32(static_cast<std::uint32_t>(a.metadata.size()));
    for (const auto& [k, v] : a.metadata) {
      meta.str(k);
      meta.str(v);
    }
    payload.record(kMetadata, meta);
  }
  {
    Writer kind;
    kind.u8(static_cast<std::uint8_t>(a.kind));
    payload.record(kArtifactKind, kind);
  }
  if (a.kind == ArtifactKind::kModel) {
    if (!a.model) throw ConfigError("model artifact without a model");
    const CrfModel& m = *a.model;
    payload.record(kTagSet, tagset_record(m.tagset()));
    payload.record(kScorer, scorer_record(m.scorer()));
    Writer trans;
    trans.u64(m.transitions().matrix().rows());
    write_matrix(trans, m.transitions().matrix());
    payload.record(kTransitions, trans);
    if (m.scorer().kind() == ScorerKind::kEmbedding)
      payload.record(kEmbeddingTable, embedding_record(*m.scorer().table()));
  } else {
    if (!a.embeddings) throw ConfigError("embedding artifact without a table");
    payload.record(kEmbeddingTable, embedding_record(*a.embeddings));
  }

  Writer file;
  file.bytes(std::string_view(kMagic, 4));
  file.u32(a.format_version);
  file.u64(payload.data().size());
  file.bytes(payload.data());
  file.u64(fnv1a64(payload.data()));
  return file.data();
}

ModelArtifact deserialize(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    if (bytes.size() < 4) throw ModelFormatError(Kind::kTruncated, "model file is truncated");
    throw ModelFormatError(Kind::kBadMagic, "not a seedner model file");
  }
  if (bytes.size() < kHeaderSize) throw ModelFormatError(Kind::kTruncated, "model file is truncated");
  Reader header(bytes.substr(4, kHeaderSize - 4));
  ModelArtifact a;
  a.format_version = header.u32();
  if (a.format_version != kFormatVersion)
    throw ModelFormatError(Kind::kVersion, "unsupported model format version " +
                                               std::to_string(a.format_version) + " (expected " +
                                               std::to_string(kFormatVersion) + ")");
  const std::uint64_t length = header.u64();
  const std::size_t available = bytes.size() - kHeaderSize;
  if (available < kTrailerSize || length > available - kTrailerSize)
    throw ModelFormatError(Kind::kTruncated, "model file is truncated");
  if (length != available - kTrailerSize)
    throw ModelFormatError(Kind::kIntegrity, "trailing bytes after model payload");

  const std::string_view payload = bytes.substr(kHeaderSize, length);
  Reader trailer(bytes.substr(kHeaderSize + length));
  if (trailer.u64() != fnv1a64(payload))
    throw ModelFormatError(Kind::kIntegrity, "model checksum mismatch");

  std::optional<TagSet> tagset;
  std::optional<ScorerRecord> scorer;
  std::optional<TransitionModel> trans;
  bool have_kind = false;

  Reader r(payload);
  while (!r.done()) {
    const auto tag = r.u32();
    const auto len = r.u64();
    Reader body(r.take(len));
    switch (tag) {
      case kMetadata: {
        const auto n = body.u32();
        for (std::uint32_t i = 0; i < n; ++i) {
          auto k = body.str();
          a.metadata[k] = body.str();
        }
        break;
      }
      case kArtifactKind: {
        const auto k = body.u8();
        if (k > 1) throw ModelFormatError(Kind::kIntegrity, "unknown artifact kind");
        a.kind = static_cast<ArtifactKind>(k);
        have_kind = true;
        break;
      }
      case kTagSet: {
        const auto n = body.u32();
        std::vector<std::string> types(n);
        for (auto& t : types) t = body.str();
        try {
          tagset = TagSet(std::move(types));
        } catch (const Error& e) {
          throw ModelFormatError(Kind::kIntegrity, e.what());
        }
        break;
      }
      case kScorer:
        scorer = read_scorer(body);
        break;
      case kTransitions: {
        const auto side = body.u64();
        if (side < 2 || side > 4096)
          throw ModelFormatError(Kind::kDimension, "transition matrix shape is implausible");
        trans = TransitionModel(side - 2, read_matrix(body, side, side));
        break;
      }
      case kEmbeddingTable:
        a.embeddings = read_embeddings(body);
        break;
      default:
        break;  // unknown records are skipped
    }
  }
  if (!have_kind) throw ModelFormatError(Kind::kIntegrity, "model file lacks an artifact kind");

  if (a.kind == ArtifactKind::kEmbeddings) {
    if (!a.embeddings) throw ModelFormatError(Kind::kIntegrity, "embedding file lacks a table");
    return a;
  }
  if (!tagset || !scorer || !trans)
    throw ModelFormatError(Kind::kIntegrity, "model file is missing required records");

  const std::size_t k = tagset->size();
  if (scorer->weights.cols() != k || trans->num_tags() != k)
    throw ModelFormatError(Kind::kDimension, "model parameters do not match the tag set (K = " +
                                                 std::to_string(k) + ")");
  EmissionScorer es;
  try {
    if (scorer->kind == ScorerKind::kFeatures) {
      es = EmissionScorer::features(k, scorer->hash_bits);
    } else {
      if (!a.embeddings)
        throw ModelFormatError(Kind::kIntegrity, "embedding model lacks its embedding table");
      es = EmissionScorer::embedding(k, a.embeddings, scorer->radius);
    }
    es.set_weights(std::move(scorer->weights));
  } catch (const ModelFormatError&) {
    throw;
  } catch (const Error& e) {
    throw ModelFormatError(Kind::kDimension, e.what());
  }
  a.model = CrfModel(std::move(es), std::move(*trans), std::move(*tagset));
  return a;
}

void save_model(const CrfModel& model, const std::filesystem::path& path,
                const std::map<std::string, std::string>& metadata) {
  ModelArtifact a;
  a.kind = ArtifactKind::kModel;
  a.model = model;
  a.embeddings = model.scorer().table();
  a.metadata = metadata;
  write_file(path, serialize(a));
}

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path,
                     const std::map<std::string, std::string>& metadata) {
  ModelArtifact a;
  a.kind = ArtifactKind::kEmbeddings;
  a.embeddings = std::make_shared<const EmbeddingTable>(table);
  a.metadata = metadata;
  write_file(path, serialize(a));
}

ModelArtifact load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError(Kind::kIo, "cannot open model file: " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return deserialize(bytes);
}

}  // namespace seedner
