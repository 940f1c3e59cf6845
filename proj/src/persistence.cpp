#include "fzdr/persistence.hpp"

#include <unistd.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fzdr {

namespace {

constexpr char magic[5] = {'F', 'Z', 'D', 'M', '1'};
constexpr std::size_t header_bytes = 5 + 4 + 4 + 8 + 8 + 8 + 8;

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(const char* p, std::size_t n) { out_.append(p, n); }
  void matrix(const DenseMatrix& m) {
    u64(static_cast<std::uint64_t>(m.rows()));
    u64(static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) f64(m(r, c));
  }
  template <class V>
  void vector(const V& v) {
    u64(static_cast<std::uint64_t>(v.size()));
    for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i) f64(v[i]);
  }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  Reader(const std::string& s, std::size_t pos, std::size_t end) : s_(s), pos_(pos), end_(end) {}
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s_[pos_++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s_[pos_++])) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  DenseMatrix matrix() {
    const auto rows = u64();
    const auto cols = u64();
    if (cols != 0 && rows > (end_ - pos_) / 8 / cols) truncated();
    DenseMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = f64();
    return m;
  }
  std::vector<double> vector() {
    const auto n = u64();
    if (n > (end_ - pos_) / 8) truncated();
    std::vector<double> v(n);
    for (auto& x : v) x = f64();
    return v;
  }
  Eigen::VectorXd eigen_vector() {
    const auto v = vector();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  bool done() const { return pos_ == end_; }

 private:
  void need(std::size_t n) const {
    if (end_ - pos_ < n) truncated();
  }
  [[noreturn]] static void truncated() { throw ModelError(ModelError::Code::truncated, "model file: truncated payload"); }

  const std::string& s_;
  std::size_t pos_;
  std::size_t end_;
};

[[noreturn]] void corrupt(const std::string& what) { throw ModelError(ModelError::Code::corrupt, "model file: " + what); }

std::uint64_t reproducible_timestamp() {
  const char* env = std::getenv("SOURCE_DATE_EPOCH");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  return *end ? 0 : v;
}

void write_payload(Writer& w, const FuzzyModel& m) {
  w.u64(static_cast<std::uint64_t>(m.prototypes.rows()));
  w.f64(m.q);
  w.u64(m.seed);
  w.u64(m.iterations);
  w.u64(m.converged ? 1 : 0);
  w.matrix(m.prototypes);
}
void write_payload(Writer& w, const SvdModel& m) {
  w.u64(static_cast<std::uint64_t>(m.V.cols()));
  w.matrix(m.V);
  w.vector(m.S);
}
void write_payload(Writer& w, const PcaModel& m) {
  w.u64(static_cast<std::uint64_t>(m.loadings.cols()));
  w.matrix(m.loadings);
  w.vector(m.column_means);
  w.vector(m.singular_values);
}
void write_payload(Writer& w, const GlobalWeightVector& m) {
  w.u64(static_cast<std::uint64_t>(m.method));
  w.vector(m.weights);
}

std::size_t width_of(const ModelPayload& p) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FuzzyModel>) return static_cast<std::size_t>(m.prototypes.cols());
        else if constexpr (std::is_same_v<T, SvdModel>) return static_cast<std::size_t>(m.V.rows());
        else if constexpr (std::is_same_v<T, PcaModel>) return static_cast<std::size_t>(m.loadings.rows());
        else return m.weights.size();
      },
      p);
}

}  // namespace

ModelKind SavedModel::kind() const {
  switch (payload.index()) {
    case 0: return ModelKind::fc;
    case 1: return ModelKind::svd;
    case 2: return ModelKind::pca;
    default: return ModelKind::weights;
  }
}

SavedModel make_saved_model(ModelPayload payload, const Vocabulary& vocabulary) {
  if (width_of(payload) != vocabulary.size())
    throw std::invalid_argument("model width " + std::to_string(width_of(payload)) + " does not match vocabulary size " +
                                std::to_string(vocabulary.size()));
  return {vocabulary.checksum(), vocabulary.size(), reproducible_timestamp(), std::move(payload)};
}

std::string serialize_model(const SavedModel& model) {
  if (width_of(model.payload) != model.vocabulary_size)
    throw std::invalid_argument("model payload width does not match vocabulary_size");
  Writer body;
  std::visit([&](const auto& m) { write_payload(body, m); }, model.payload);

  Writer w;
  w.raw(magic, sizeof magic);
  w.u32(model_format_version);
  w.u32(static_cast<std::uint32_t>(model.kind()));
  w.u64(model.vocabulary_checksum);
  w.u64(model.vocabulary_size);
  w.u64(model.created);
  w.u64(body.bytes().size());
  w.raw(body.bytes().data(), body.bytes().size());
  return std::move(w.bytes());
}

SavedModel deserialize_model(const std::string& bytes) {
  if (bytes.size() < sizeof magic || std::memcmp(bytes.data(), magic, sizeof magic) != 0)
    throw ModelError(ModelError::Code::not_a_model, "not a model file");
  if (bytes.size() < header_bytes) throw ModelError(ModelError::Code::truncated, "model file: truncated header");
  Reader head(bytes, sizeof magic, header_bytes);
  const auto version = head.u32();
  if (version != model_format_version)
    throw ModelError(ModelError::Code::version_mismatch, "model file: format version " + std::to_string(version) +
                                                             ", expected " + std::to_string(model_format_version));
  const auto kind = head.u32();
  SavedModel out;
  out.vocabulary_checksum = head.u64();
  out.vocabulary_size = head.u64();
  out.created = head.u64();
  const auto length = head.u64();
  if (bytes.size() - header_bytes < length)
    throw ModelError(ModelError::Code::truncated, "model file: truncated, payload declares " + std::to_string(length) +
                                                      " bytes, " + std::to_string(bytes.size() - header_bytes) +
                                                      " present");
  if (bytes.size() - header_bytes > length) corrupt("trailing bytes after payload");

  Reader r(bytes, header_bytes, bytes.size());
  const auto m = out.vocabulary_size;
  switch (static_cast<ModelKind>(kind)) {
    case ModelKind::fc: {
      FuzzyModel f;
      const auto k = r.u64();
      f.q = r.f64();
      f.seed = r.u64();
      f.iterations = r.u64();
      f.converged = r.u64() != 0;
      f.prototypes = r.matrix();
      if (static_cast<std::uint64_t>(f.prototypes.rows()) != k || static_cast<std::uint64_t>(f.prototypes.cols()) != m)
        corrupt("prototype shape disagrees with header");
      if (!(f.q > 1.0)) corrupt("fuzzifier must be > 1");
      out.payload = std::move(f);
      break;
    }
    case ModelKind::svd: {
      SvdModel s;
      const auto k = r.u64();
      s.V = r.matrix();
      s.S = r.eigen_vector();
      if (static_cast<std::uint64_t>(s.V.rows()) != m || static_cast<std::uint64_t>(s.V.cols()) != k ||
          static_cast<std::uint64_t>(s.S.size()) != k)
        corrupt("SVD shape disagrees with header");
      out.payload = std::move(s);
      break;
    }
    case ModelKind::pca: {
      PcaModel p;
      const auto k = r.u64();
      p.loadings = r.matrix();
      p.column_means = r.eigen_vector();
      p.singular_values = r.eigen_vector();
      if (static_cast<std::uint64_t>(p.loadings.rows()) != m || static_cast<std::uint64_t>(p.loadings.cols()) != k ||
          static_cast<std::uint64_t>(p.column_means.size()) != m ||
          static_cast<std::uint64_t>(p.singular_values.size()) != k)
        corrupt("PCA shape disagrees with header");
      out.payload = std::move(p);
      break;
    }
    case ModelKind::weights: {
      GlobalWeightVector g;
      const auto method = r.u64();
      if (method > static_cast<std::uint64_t>(WeightMethod::probidf)) corrupt("unknown weighting method");
      g.method = static_cast<WeightMethod>(method);
      g.weights = r.vector();
      if (g.weights.size() != m) corrupt("weight vector length disagrees with header");
      out.payload = std::move(g);
      break;
    }
    default:
      corrupt("unknown model kind " + std::to_string(kind));
  }
  if (!r.done()) corrupt("payload longer than its contents");
  return out;
}

void save_model(const SavedModel& model, const std::string& path) {
  const std::string bytes = serialize_model(model);
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PathError("cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw PathError("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw PathError("cannot rename " + tmp + " to " + path);
  }
}

SavedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PathError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_model(ss.str());
}

void check_vocabulary(const SavedModel& model, const Vocabulary& vocabulary) {
  if (model.vocabulary_checksum != vocabulary.checksum() || model.vocabulary_size != vocabulary.size())
    throw ModelError(ModelError::Code::checksum_mismatch,
                     "vocabulary checksum mismatch: model was fit on a different vocabulary");
}

}  // namespace fzdr
