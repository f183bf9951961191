#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "feeder/config.hpp"
#include "feeder/errors.hpp"
#include "feeder/oracle.hpp"

namespace feeder {

/// How a pair (left = W_i, right = W_j) was resolved.
enum class PairCase {
  MutuallySufficient,  // I: the smaller side survives, right on a size tie
  LeftSufficient,      // II-left: left covers right, left survives
  RightSufficient,     // II-right: right covers left, right survives
  Neither,             // III: the union survives
};

std::string_view to_string(PairCase c);

struct PairOutcome {
  DemoSet left;
  DemoSet right;
  PairCase kind = PairCase::Neither;
  DemoSet survivor;
};

struct RoundTrace {
  int run_index = 0;    // 1-based
  int round_index = 0;  // 1-based within the run
  std::vector<PairOutcome> pairs;
  std::optional<DemoSet> carried;  // unpaired node appended unchanged
  std::vector<DemoSet> survivors;
  std::size_t oracle_calls = 0;
  std::size_t sufficiency_checks = 0;
};

struct PairingOrder {
  bool shuffle = false;
  std::uint64_t seed = 0;
};

/// One tournament round: adjacent nodes are paired in list order (after a
/// seeded permutation when shuffling) and checked for sufficiency both ways.
/// Nodes must be pairwise disjoint (NodesNotDisjoint) and non-empty list.
RoundTrace run_round(const Oracle& oracle, std::vector<DemoSet> nodes, const PairingOrder& order = {},
                     unsigned jobs = 1);

struct RunSummary {
  int run_index = 0;
  std::size_t input_size = 0;
  std::size_t output_size = 0;
  int rounds_executed = 0;
  bool early_stop = false;  // a single node remained before K rounds
};

struct ApproxResult {
  DemoSet feeder;
  std::vector<RoundTrace> rounds;
  std::vector<RunSummary> runs;
  std::size_t input_size = 0;
  std::size_t oracle_calls = 0;
  std::size_t sufficiency_checks = 0;
};

/// Raised when the oracle fails mid-run; keeps the rounds completed so far.
class RunAborted : public Error {
 public:
  RunAborted(ErrorKind kind, const std::string& message, std::vector<RoundTrace> partial)
      : Error(kind, message), partial_(std::move(partial)) {}
  const std::vector<RoundTrace>& partial() const noexcept { return partial_; }

 private:
  std::vector<RoundTrace> partial_;
};

/// Tree-based approximate pre-selection: R chained runs of at most K rounds.
/// Run 1 pairs the corpus in ingestion order; later runs take the previous
/// output in canonical id order.
ApproxResult approx_feeder(const Oracle& oracle, const Corpus& corpus, const TreeConfig& config);
ApproxResult approx_feeder(const Oracle& oracle, std::span<const DemoId> ordered_input, const TreeConfig& config);

/// Worst-case number of set-sufficiency checks for n inputs: 2*floor(m/2) per
/// round over the node counts m = n, ceil(n/2), ..., for K rounds and R runs
/// with no shrinkage between runs.
std::size_t call_budget(std::size_t n, const TreeConfig& config);

}  // namespace feeder
