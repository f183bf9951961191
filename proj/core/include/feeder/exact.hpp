#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "feeder/oracle.hpp"
#include "feeder/selectors.hpp"

namespace feeder {

struct NecessityRound {
  int outer_round = 1;  // always 1 for the MAINTAIN tree
  std::vector<std::pair<DemoSet, DemoSet>> checked;
  std::vector<DemoSet> merged;
  DemoSet kept_max;
};

struct NecessityTrace {
  std::string algorithm;  // "exact-maintain" or "exact-iterative"
  std::vector<DemoSet> initial;  // H_0 of each outer round
  std::vector<NecessityRound> rounds;
  DemoSet removed_total;
  std::size_t oracle_calls = 0;
  bool fell_back = false;  // frontier exceeded max_frontier; iterative result used
};

struct ExactResult {
  DemoSet feeder;
  NecessityTrace trace;
};

struct ExactOptions {
  std::size_t max_frontier = 64;
  std::optional<int> max_outer_rounds;
  unsigned jobs = 1;
};

/// Pairwise-merge tree with MAINTAIN signals over all unordered pairs per
/// round. Requires every corpus query to be correct with the whole corpus as
/// context (PreconditionUnmet otherwise).
ExactResult exact_feeder_maintain(const Oracle& oracle, const Corpus& corpus, const ExactOptions& options = {});

/// Repeated one-pass removal tournaments, each on what the previous ones left.
ExactResult exact_feeder_iterative(const Oracle& oracle, const Corpus& corpus, const ExactOptions& options = {});
ExactResult exact_feeder_iterative(const Oracle& oracle, const DemoSet& universe, const ExactOptions& options = {});

struct FilterResult {
  std::vector<Demonstration> selected;
  std::vector<Demonstration> initial;
  DemoSet pruned;
  bool pool_exhausted = false;
  bool precondition_unmet = false;  // pruning skipped
};

/// Selects n from the pool, removes what one iterative round finds
/// unnecessary, then refills once from the selector's ranking.
FilterResult post_retrieval_filter(const Oracle& oracle, const Selector& selector, const DemoSet& pool,
                                   std::string_view query, std::size_t n, unsigned jobs = 1);

}  // namespace feeder
