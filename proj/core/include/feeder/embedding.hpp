#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "feeder/digest.hpp"

namespace feeder {

/// Unit-length vector.
class Embedding {
 public:
  Embedding() = default;
  /// L2-normalizes `values`; a zero vector throws EmptyInput.
  static Embedding normalized(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t dim() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// Dot product; both operands are unit-norm so this is cosine similarity.
double sim(const Embedding& a, const Embedding& b);

class Embedder {
 public:
  virtual ~Embedder() = default;
  /// Deterministic. Empty text after normalization throws EmptyInput.
  virtual Embedding embed(std::string_view text) const = 0;
  virtual std::size_t dim() const = 0;
};

using EmbedderPtr = std::shared_ptr<const Embedder>;

/// Lower-cases, collapses whitespace, pads with one space each side, and
/// counts FNV-1a hashed byte trigrams into `dim` buckets.
class TrigramEmbedder final : public Embedder {
 public:
  explicit TrigramEmbedder(std::size_t dim = 256);
  Embedding embed(std::string_view text) const override;
  std::size_t dim() const override { return dim_; }

 private:
  std::size_t dim_;
};

/// Fixed text -> vector table, for fixtures and precomputed embeddings.
/// Unknown text goes to `fallback` or throws InvalidArgument without one.
class TableEmbedder final : public Embedder {
 public:
  TableEmbedder(std::size_t dim, EmbedderPtr fallback = nullptr);
  void set(std::string text, std::vector<double> values);
  Embedding embed(std::string_view text) const override;
  std::size_t dim() const override { return dim_; }

 private:
  std::size_t dim_;
  EmbedderPtr fallback_;
  std::map<std::string, Embedding, std::less<>> table_;
};

/// Memoizes another embedder, keyed by SHA-256 of the text. The binary cache
/// file holds a header {magic "FEEDEMB1", u32 dim, u64 count} followed by
/// rows of 32-byte digest + dim little-endian float32.
class CachingEmbedder final : public Embedder {
 public:
  explicit CachingEmbedder(EmbedderPtr base);
  Embedding embed(std::string_view text) const override;
  std::size_t dim() const override { return base_->dim(); }

  std::size_t size() const;
  void save(const std::filesystem::path& path) const;
  /// Loads rows into the memo. Dimension mismatch or truncation throws Malformed.
  void load(const std::filesystem::path& path);

 private:
  EmbedderPtr base_;
  mutable std::mutex mu_;
  mutable std::map<Digest, Embedding> memo_;
};

}  // namespace feeder
