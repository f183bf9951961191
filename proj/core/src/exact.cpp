#include "feeder/exact.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "feeder/errors.hpp"
#include "feeder/parallel.hpp"
#include "feeder/sufficiency.hpp"

namespace feeder {

namespace {

struct Context {
  const Oracle& oracle;
  DemoSet queries;
  unsigned jobs;
  std::atomic<std::size_t> calls{0};

  bool removable(const DemoSet& from, const DemoSet& removed) {
    auto check = check_removable(oracle, from, removed, queries);
    calls.fetch_add(check.oracle_calls);
    return check.verdict;
  }

  void require_full_context(const DemoSet& universe) {
    if (!removable(universe, DemoSet{})) {
      throw Error(ErrorKind::PreconditionUnmet,
                  "some corpus query is answered incorrectly even with the whole corpus as context");
    }
  }

  std::vector<DemoSet> individually_unnecessary(const DemoSet& from) {
    const auto& members = from.members();
    std::vector<char> ok(members.size(), 0);
    parallel_for(members.size(), jobs,
                 [&](std::size_t i) { ok[i] = removable(from, DemoSet::singleton(members[i])) ? 1 : 0; });
    std::vector<DemoSet> out;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (ok[i]) out.push_back(DemoSet::singleton(members[i]));
    }
    return out;
  }
};

/// Largest node; equal sizes resolved by the smaller canonical hash.
const DemoSet& largest(const std::vector<const DemoSet*>& nodes) {
  const DemoSet* best = nodes.front();
  for (const DemoSet* n : nodes) {
    if (n->size() > best->size() || (n->size() == best->size() && n->canonical_hash() < best->canonical_hash())) {
      best = n;
    }
  }
  return *best;
}

// One pass of pairwise removal merges on `frontier`; returns the single root.
DemoSet removal_tournament(Context& ctx, const DemoSet& from, std::vector<DemoSet> frontier, int outer,
                           NecessityTrace& trace) {
  while (frontier.size() > 1) {
    NecessityRound round;
    round.outer_round = outer;
    const std::size_t n_pairs = frontier.size() / 2;
    std::vector<DemoSet> unions(n_pairs);
    std::vector<char> pass(n_pairs, 0);
    parallel_for(n_pairs, ctx.jobs, [&](std::size_t p) {
      unions[p] = set_union(frontier[2 * p], frontier[2 * p + 1]);
      pass[p] = ctx.removable(from, unions[p]) ? 1 : 0;
    });

    std::vector<const DemoSet*> candidates;
    for (std::size_t p = 0; p < n_pairs; ++p) {
      round.checked.emplace_back(frontier[2 * p], frontier[2 * p + 1]);
      if (pass[p]) {
        round.merged.push_back(unions[p]);
        candidates.push_back(&unions[p]);
      } else {
        candidates.push_back(&frontier[2 * p]);
        candidates.push_back(&frontier[2 * p + 1]);
      }
    }
    const bool has_carry = frontier.size() % 2 == 1;
    if (has_carry) candidates.push_back(&frontier.back());
    round.kept_max = largest(candidates);

    std::vector<DemoSet> next;
    for (std::size_t p = 0; p < n_pairs; ++p) {
      if (pass[p]) {
        next.push_back(unions[p]);
      } else if (frontier[2 * p] == round.kept_max || frontier[2 * p + 1] == round.kept_max) {
        next.push_back(round.kept_max);
      }
    }
    if (has_carry) next.push_back(frontier.back());
    frontier = std::move(next);
    trace.rounds.push_back(std::move(round));
  }
  return frontier.empty() ? DemoSet{} : frontier.front();
}

}  // namespace

ExactResult exact_feeder_iterative(const Oracle& oracle, const DemoSet& universe, const ExactOptions& options) {
  if (options.max_outer_rounds && *options.max_outer_rounds < 1) {
    throw Error(ErrorKind::InvalidArgument, "max_outer_rounds must be at least 1");
  }
  Context ctx{oracle, universe, options.jobs};
  ctx.require_full_context(universe);

  ExactResult result;
  result.trace.algorithm = "exact-iterative";
  DemoSet removed;
  for (int outer = 1;; ++outer) {
    const DemoSet d_in = set_difference(universe, removed);
    auto h0 = ctx.individually_unnecessary(d_in);
    DemoSet h0_union;
    for (const auto& h : h0) h0_union = set_union(h0_union, h);
    result.trace.initial.push_back(h0_union);
    if (h0.empty()) break;
    const std::size_t h0_size = h0.size();
    removed = set_union(removed, removal_tournament(ctx, d_in, std::move(h0), outer, result.trace));
    if (h0_size <= 1) break;
    if (options.max_outer_rounds && outer >= *options.max_outer_rounds) break;
  }
  result.trace.removed_total = removed;
  result.trace.oracle_calls = ctx.calls.load();
  result.feeder = set_difference(universe, removed);
  return result;
}

ExactResult exact_feeder_iterative(const Oracle& oracle, const Corpus& corpus, const ExactOptions& options) {
  return exact_feeder_iterative(oracle, corpus.ids(), options);
}

ExactResult exact_feeder_maintain(const Oracle& oracle, const Corpus& corpus, const ExactOptions& options) {
  const DemoSet universe = corpus.ids();
  Context ctx{oracle, universe, options.jobs};
  ctx.require_full_context(universe);

  ExactResult result;
  result.trace.algorithm = "exact-maintain";
  auto frontier = ctx.individually_unnecessary(universe);
  {
    DemoSet h0_union;
    for (const auto& h : frontier) h0_union = set_union(h0_union, h);
    result.trace.initial.push_back(h0_union);
  }

  while (frontier.size() > 1) {
    if (frontier.size() > options.max_frontier) {
      auto fallback = exact_feeder_iterative(oracle, universe, options);
      fallback.trace.algorithm = "exact-maintain";
      fallback.trace.fell_back = true;
      fallback.trace.oracle_calls += ctx.calls.load();
      return fallback;
    }
    NecessityRound round;
    // Every distinct union is checked once per round.
    std::map<Digest, std::size_t> union_index;
    std::vector<DemoSet> unions;
    std::vector<std::size_t> pair_union;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (std::size_t j = i + 1; j < frontier.size(); ++j) {
        round.checked.emplace_back(frontier[i], frontier[j]);
        auto u = set_union(frontier[i], frontier[j]);
        auto [it, inserted] = union_index.emplace(u.canonical_hash(), unions.size());
        if (inserted) unions.push_back(std::move(u));
        pair_union.push_back(it->second);
      }
    }
    std::vector<char> pass(unions.size(), 0);
    parallel_for(unions.size(), ctx.jobs, [&](std::size_t k) { pass[k] = ctx.removable(universe, unions[k]) ? 1 : 0; });

    std::vector<const DemoSet*> candidates;
    std::size_t pair = 0;
    std::vector<char> failed_node(frontier.size(), 0);
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (std::size_t j = i + 1; j < frontier.size(); ++j, ++pair) {
        if (!pass[pair_union[pair]]) failed_node[i] = failed_node[j] = 1;
      }
    }
    for (std::size_t k = 0; k < unions.size(); ++k) {
      if (pass[k]) {
        round.merged.push_back(unions[k]);
        candidates.push_back(&unions[k]);
      }
    }
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      if (failed_node[i]) candidates.push_back(&frontier[i]);
    }
    round.kept_max = largest(candidates);

    std::vector<DemoSet> next = round.merged;
    if (std::find(next.begin(), next.end(), round.kept_max) == next.end()) next.push_back(round.kept_max);
    frontier = std::move(next);
    result.trace.rounds.push_back(std::move(round));
  }

  const DemoSet root = frontier.empty() ? DemoSet{} : frontier.front();
  result.trace.removed_total = root;
  result.trace.oracle_calls = ctx.calls.load();
  result.feeder = set_difference(universe, root);
  return result;
}

FilterResult post_retrieval_filter(const Oracle& oracle, const Selector& selector, const DemoSet& pool,
                                   std::string_view query, std::size_t n, unsigned jobs) {
  if (pool.empty()) throw Error(ErrorKind::EmptyPool, "selection pool is empty");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  const Corpus& corpus = oracle.corpus();
  std::vector<Demonstration> pool_demos;
  for (const auto& id : corpus.in_corpus_order(pool)) pool_demos.push_back(corpus.at(id));
  const auto ranking = selector.rank(pool_demos, query);

  FilterResult out;
  const std::size_t take = std::min(n, ranking.size());
  out.initial.assign(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(take));
  std::vector<DemoId> initial_ids;
  for (const auto& d : out.initial) initial_ids.push_back(d.id);

  ExactOptions options;
  options.max_outer_rounds = 1;
  options.jobs = jobs;
  try {
    out.pruned = exact_feeder_iterative(oracle, DemoSet::from_ids(initial_ids), options).trace.removed_total;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PreconditionUnmet) throw;
    out.precondition_unmet = true;
  }
  for (const auto& d : out.initial) {
    if (!out.pruned.contains(d.id)) out.selected.push_back(d);
  }
  for (std::size_t i = take; i < ranking.size() && out.selected.size() < n; ++i) out.selected.push_back(ranking[i]);
  out.pool_exhausted = out.selected.size() < n;
  return out;
}

}  // namespace feeder
