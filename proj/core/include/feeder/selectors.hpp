#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "feeder/config.hpp"
#include "feeder/corpus.hpp"
#include "feeder/embedding.hpp"

namespace feeder {

/// Seeded uniform sample without replacement of min(n, |pool|) items.
std::vector<Demonstration> select_random(std::span<const Demonstration> pool, std::size_t n, std::uint64_t seed);

/// Top-n by similarity to the query, ties by ascending id.
std::vector<Demonstration> select_similar(std::span<const Demonstration> pool, std::string_view query, std::size_t n,
                                          const Embedder& embedder, unsigned jobs = 1);

enum class MmrVariant {
  Standard,  // penalty: max over selected s of sim(candidate, s)
  Literal,   // penalty: max over selected s of sim(query, s)
};

/// Greedy maximal marginal relevance, ties by ascending id.
std::vector<Demonstration> select_diverse(std::span<const Demonstration> pool, std::string_view query, std::size_t n,
                                          double eta, const Embedder& embedder,
                                          MmrVariant variant = MmrVariant::Standard, unsigned jobs = 1);

/// One configured selector. Every kind has the prefix property: select(n) is
/// the first n items of rank().
class Selector {
 public:
  Selector(SelectorKind kind, EmbedderPtr embedder, double eta = 1.0, std::uint64_t seed = 0,
           MmrVariant variant = MmrVariant::Standard, unsigned jobs = 1);

  SelectorKind kind() const noexcept { return kind_; }
  std::vector<Demonstration> select(std::span<const Demonstration> pool, std::string_view query,
                                    std::size_t n) const;
  std::vector<Demonstration> rank(std::span<const Demonstration> pool, std::string_view query) const;

 private:
  SelectorKind kind_;
  EmbedderPtr embedder_;
  double eta_;
  std::uint64_t seed_;
  MmrVariant variant_;
  unsigned jobs_;
};

}  // namespace feeder
