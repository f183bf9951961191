#include "feeder/embedding.hpp"

#include <bit>
#include <cmath>
#include <cstring>

#include "feeder/errors.hpp"
#include "feeder/fileio.hpp"
#include "feeder/oracle.hpp"

namespace feeder {

namespace {

constexpr char kMagic[8] = {'F', 'E', 'E', 'D', 'E', 'M', 'B', '1'};

void put_le(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_le(const std::string& in, std::size_t& pos, int bytes) {
  if (pos + bytes > in.size()) throw Error(ErrorKind::Malformed, "embedding cache is truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += bytes;
  return v;
}

}  // namespace

Embedding Embedding::normalized(std::vector<double> values) {
  double norm2 = 0.0;
  for (double v : values) norm2 += v * v;
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw Error(ErrorKind::EmptyInput, "cannot normalize a zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : values) v *= inv;
  Embedding e;
  e.values_ = std::move(values);
  return e;
}

double sim(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::InvalidArgument, "embedding dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a.values()[i] * b.values()[i];
  return s;
}

TrigramEmbedder::TrigramEmbedder(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "embedding dimension must be positive");
}

Embedding TrigramEmbedder::embed(std::string_view text) const {
  const std::string norm = normalize_answer(text);
  if (norm.empty()) throw Error(ErrorKind::EmptyInput, "cannot embed empty text");
  const std::string padded = " " + norm + " ";
  std::vector<double> counts(dim_, 0.0);
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t k = 0; k < 3; ++k) {
      h ^= static_cast<unsigned char>(padded[i + k]);
      h *= 0x100000001b3ULL;
    }
    counts[h % dim_] += 1.0;
  }
  return Embedding::normalized(std::move(counts));
}

TableEmbedder::TableEmbedder(std::size_t dim, EmbedderPtr fallback) : dim_(dim), fallback_(std::move(fallback)) {
  if (fallback_ && fallback_->dim() != dim_) throw Error(ErrorKind::InvalidArgument, "fallback dimension differs");
}

void TableEmbedder::set(std::string text, std::vector<double> values) {
  if (values.size() != dim_) throw Error(ErrorKind::InvalidArgument, "table row has the wrong dimension");
  table_.insert_or_assign(std::move(text), Embedding::normalized(std::move(values)));
}

Embedding TableEmbedder::embed(std::string_view text) const {
  if (auto it = table_.find(text); it != table_.end()) return it->second;
  if (fallback_) return fallback_->embed(text);
  if (normalize_answer(text).empty()) throw Error(ErrorKind::EmptyInput, "cannot embed empty text");
  throw Error(ErrorKind::InvalidArgument, "no table embedding for '" + std::string(text) + "'");
}

CachingEmbedder::CachingEmbedder(EmbedderPtr base) : base_(std::move(base)) {
  if (!base_) throw Error(ErrorKind::InvalidArgument, "caching embedder needs a base embedder");
}

Embedding CachingEmbedder::embed(std::string_view text) const {
  const Digest key = sha256(text);
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  Embedding e = base_->embed(text);
  std::lock_guard lock(mu_);
  memo_.emplace(key, e);
  return e;
}

std::size_t CachingEmbedder::size() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

void CachingEmbedder::save(const std::filesystem::path& path) const {
  std::string out(kMagic, sizeof kMagic);
  std::lock_guard lock(mu_);
  put_le(out, dim(), 4);
  put_le(out, memo_.size(), 8);
  for (const auto& [key, e] : memo_) {
    out.append(reinterpret_cast<const char*>(key.bytes.data()), key.bytes.size());
    for (double v : e.values()) put_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)), 4);
  }
  write_file_atomic(path, out);
}

void CachingEmbedder::load(const std::filesystem::path& path) {
  const std::string in = read_file(path);
  if (in.size() < sizeof kMagic || std::memcmp(in.data(), kMagic, sizeof kMagic) != 0) {
    throw Error(ErrorKind::Malformed, "not an embedding cache: " + path.string());
  }
  std::size_t pos = sizeof kMagic;
  const auto file_dim = get_le(in, pos, 4);
  if (file_dim != dim()) {
    throw Error(ErrorKind::Malformed, "embedding cache dimension " + std::to_string(file_dim) + " does not match " +
                                          std::to_string(dim()));
  }
  const auto count = get_le(in, pos, 8);
  std::map<Digest, Embedding> rows;
  for (std::uint64_t r = 0; r < count; ++r) {
    if (pos + 32 > in.size()) throw Error(ErrorKind::Malformed, "embedding cache is truncated");
    Digest key;
    std::memcpy(key.bytes.data(), in.data() + pos, 32);
    pos += 32;
    std::vector<double> values(file_dim);
    for (auto& v : values) v = std::bit_cast<float>(static_cast<std::uint32_t>(get_le(in, pos, 4)));
    rows.insert_or_assign(key, Embedding::normalized(std::move(values)));
  }
  if (pos != in.size()) throw Error(ErrorKind::Malformed, "trailing bytes in embedding cache");
  std::lock_guard lock(mu_);
  for (auto& [k, e] : rows) memo_.insert_or_assign(k, std::move(e));
}

}  // namespace feeder
