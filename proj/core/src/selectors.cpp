#include "feeder/selectors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "feeder/errors.hpp"
#include "feeder/parallel.hpp"
#include "feeder/random.hpp"

namespace feeder {

namespace {

void check_args(std::span<const Demonstration> pool, std::size_t n) {
  if (pool.empty()) throw Error(ErrorKind::EmptyPool, "selection pool is empty");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
}

std::vector<Embedding> embed_pool(std::span<const Demonstration> pool, const Embedder& embedder, unsigned jobs) {
  std::vector<Embedding> out(pool.size());
  parallel_for(pool.size(), jobs, [&](std::size_t i) { out[i] = embedder.embed(pool[i].x); });
  return out;
}

}  // namespace

std::vector<Demonstration> select_random(std::span<const Demonstration> pool, std::size_t n, std::uint64_t seed) {
  check_args(pool, n);
  const auto perm = seeded_permutation(pool.size(), seed);
  std::vector<Demonstration> out;
  for (std::size_t i = 0; i < std::min(n, pool.size()); ++i) out.push_back(pool[perm[i]]);
  return out;
}

std::vector<Demonstration> select_similar(std::span<const Demonstration> pool, std::string_view query, std::size_t n,
                                          const Embedder& embedder, unsigned jobs) {
  check_args(pool, n);
  const Embedding q = embedder.embed(query);
  const auto emb = embed_pool(pool, embedder, jobs);
  std::vector<double> score(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) score[i] = sim(q, emb[i]);
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return pool[a].id < pool[b].id;
  });
  std::vector<Demonstration> out;
  for (std::size_t i = 0; i < std::min(n, pool.size()); ++i) out.push_back(pool[order[i]]);
  return out;
}

std::vector<Demonstration> select_diverse(std::span<const Demonstration> pool, std::string_view query, std::size_t n,
                                          double eta, const Embedder& embedder, MmrVariant variant, unsigned jobs) {
  check_args(pool, n);
  const Embedding q = embedder.embed(query);
  const auto emb = embed_pool(pool, embedder, jobs);
  std::vector<double> relevance(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) relevance[i] = sim(q, emb[i]);

  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> penalty(pool.size(), neg_inf);  // max similarity to the selected set
  std::vector<bool> taken(pool.size(), false);
  std::vector<Demonstration> out;
  const std::size_t target = std::min(n, pool.size());
  while (out.size() < target) {
    std::size_t best = pool.size();
    double best_score = neg_inf;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (taken[i]) continue;
      const double s = out.empty() ? relevance[i] : relevance[i] - eta * penalty[i];
      if (best == pool.size() || s > best_score || (s == best_score && pool[i].id < pool[best].id)) {
        best = i;
        best_score = s;
      }
    }
    taken[best] = true;
    out.push_back(pool[best]);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (taken[i]) continue;
      const double s = variant == MmrVariant::Standard ? sim(emb[i], emb[best]) : relevance[best];
      penalty[i] = std::max(penalty[i], s);
    }
  }
  return out;
}

Selector::Selector(SelectorKind kind, EmbedderPtr embedder, double eta, std::uint64_t seed, MmrVariant variant,
                   unsigned jobs)
    : kind_(kind), embedder_(std::move(embedder)), eta_(eta), seed_(seed), variant_(variant), jobs_(jobs) {
  if (!embedder_ && kind_ != SelectorKind::Random) {
    throw Error(ErrorKind::InvalidArgument, "similarity and diversity selectors need an embedder");
  }
}

std::vector<Demonstration> Selector::select(std::span<const Demonstration> pool, std::string_view query,
                                            std::size_t n) const {
  switch (kind_) {
    case SelectorKind::Random: return select_random(pool, n, seed_);
    case SelectorKind::Similarity: return select_similar(pool, query, n, *embedder_, jobs_);
    case SelectorKind::Diversity: return select_diverse(pool, query, n, eta_, *embedder_, variant_, jobs_);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown selector kind");
}

std::vector<Demonstration> Selector::rank(std::span<const Demonstration> pool, std::string_view query) const {
  return select(pool, query, std::max<std::size_t>(pool.size(), 1));
}

}  // namespace feeder
