#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "feeder/analysis.hpp"

namespace feeder {

/// Inner step of the bi-level loop: produce the next oracle from the current
/// one with the feeder held fixed.
using TuneHook = std::function<OraclePtr(const OraclePtr& oracle, const DemoSet& feeder)>;

TuneHook identity_tune();
/// Synthetic stand-in for fine-tuning; see absorb_facts.
TuneHook absorb_tune();

struct AccuracyProbe {
  const Corpus* test = nullptr;
  const Selector* selector = nullptr;
  std::size_t n_shots = 1;
};

struct IterationRecord {
  int iteration = 0;
  DemoSet feeder;
  Digest selection_fingerprint;  // oracle the feeder was selected with
  Digest tuned_fingerprint;      // oracle after the tune hook
  ReductionReport report;
  std::optional<double> accuracy;  // tuned oracle, feeder as pool
};

struct BilevelState {
  int iteration = 0;
  DemoSet feeder;
  Digest oracle_fingerprint;
  OraclePtr oracle;
  std::vector<IterationRecord> history;
};

/// Alternates approx pre-selection over the current feeder (initially the
/// corpus) with a tune step. `on_iteration` sees every completed iteration.
BilevelState bilevel(OraclePtr oracle, const Corpus& corpus, int iterations, const TuneHook& tune,
                     const TreeConfig& config, std::optional<AccuracyProbe> probe = std::nullopt,
                     const std::function<void(const IterationRecord&)>& on_iteration = {});

struct UpdateResult {
  DemoSet feeder;
  DemoSet base;   // existing feeder minus removals, pinned during selection
  DemoSet added;  // what survived pre-selection over the added demos
  std::size_t oracle_calls = 0;
  std::optional<ApproxResult> approx;
};

/// Pre-selects only the added demonstrations against an oracle that always
/// sees the surviving feeder. A single added demo, which the tournament never
/// pairs, is dropped when the pinned feeder alone already answers it. Added ids already in the base throw DuplicateId;
/// removed ids unknown to both the feeder and the oracle's corpus throw UnknownId.
UpdateResult incremental_update(const OraclePtr& oracle, const DemoSet& existing_feeder, const Corpus& added,
                                const DemoSet& removed_ids, const TreeConfig& config);

struct CrossModelResult {
  DemoSet feeder;
  double accuracy = 0.0;
};

CrossModelResult cross_model_eval(const Oracle& selection_oracle, const Oracle& target_oracle, const Corpus& corpus,
                                  const TreeConfig& config, const Corpus& test, const Selector& selector,
                                  std::size_t n_shots);

}  // namespace feeder
