#include "feeder/pipeline.hpp"

#include <chrono>

#include "feeder/errors.hpp"
#include "feeder/sufficiency.hpp"
#include "feeder/synthetic_oracle.hpp"

namespace feeder {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

TuneHook identity_tune() {
  return [](const OraclePtr& oracle, const DemoSet&) { return oracle; };
}

TuneHook absorb_tune() {
  return [](const OraclePtr& oracle, const DemoSet& feeder) { return absorb_facts(*oracle, feeder); };
}

BilevelState bilevel(OraclePtr oracle, const Corpus& corpus, int iterations, const TuneHook& tune,
                     const TreeConfig& config, std::optional<AccuracyProbe> probe,
                     const std::function<void(const IterationRecord&)>& on_iteration) {
  if (iterations < 1) throw Error(ErrorKind::InvalidArgument, "iterations must be at least 1");
  if (!oracle) throw Error(ErrorKind::InvalidArgument, "bilevel needs an oracle");
  if (!tune) throw Error(ErrorKind::InvalidArgument, "bilevel needs a tune hook");
  if (probe && (!probe->test || !probe->selector)) {
    throw Error(ErrorKind::InvalidArgument, "accuracy probe needs a test set and a selector");
  }

  BilevelState state;
  state.oracle = std::move(oracle);
  state.oracle_fingerprint = state.oracle->fingerprint();
  std::vector<DemoId> input;
  for (const auto& d : corpus) input.push_back(d.id);

  for (int it = 1; it <= iterations; ++it) {
    IterationRecord rec;
    rec.iteration = it;
    rec.selection_fingerprint = state.oracle->fingerprint();
    const auto start = std::chrono::steady_clock::now();
    const auto approx = approx_feeder(*state.oracle, input, config);
    rec.report = reduction_report(approx, seconds_since(start));
    rec.feeder = approx.feeder;

    state.oracle = tune(state.oracle, rec.feeder);
    rec.tuned_fingerprint = state.oracle->fingerprint();
    if (probe) {
      rec.accuracy = icl_accuracy(*state.oracle, rec.feeder, *probe->selector, probe->n_shots, *probe->test,
                                  config.jobs);
    }

    state.iteration = it;
    state.feeder = rec.feeder;
    state.oracle_fingerprint = rec.tuned_fingerprint;
    input = corpus.in_corpus_order(rec.feeder);
    if (on_iteration) on_iteration(rec);
    state.history.push_back(std::move(rec));
  }
  return state;
}

UpdateResult incremental_update(const OraclePtr& oracle, const DemoSet& existing_feeder, const Corpus& added,
                                const DemoSet& removed_ids, const TreeConfig& config) {
  if (!oracle) throw Error(ErrorKind::InvalidArgument, "incremental_update needs an oracle");
  for (const auto& id : removed_ids) {
    if (!existing_feeder.contains(id) && !oracle->corpus().contains(id)) {
      throw Error(ErrorKind::UnknownId, "removed id '" + id.str() + "' is neither in the feeder nor the corpus");
    }
  }
  UpdateResult result;
  result.base = set_difference(existing_feeder, removed_ids);
  for (const auto& d : added) {
    if (result.base.contains(d.id)) {
      throw Error(ErrorKind::DuplicateId, "added id '" + d.id.str() + "' is already in the feeder");
    }
  }
  if (added.empty()) {
    result.feeder = result.base;
    return result;
  }
  const auto pinned = with_pinned_context(oracle, result.base);
  auto approx = approx_feeder(*pinned, added, config);
  result.added = approx.feeder;
  result.oracle_calls = approx.oracle_calls;
  // A lone added demo is never paired; pair it with the pinned base instead.
  if (added.size() == 1 && !result.base.empty()) {
    const auto base_only = check_sufficient(*pinned, DemoSet{}, result.added);
    result.oracle_calls += base_only.oracle_calls;
    if (base_only.verdict) result.added = DemoSet{};
  }
  result.feeder = set_union(result.base, result.added);
  result.approx = std::move(approx);
  return result;
}

CrossModelResult cross_model_eval(const Oracle& selection_oracle, const Oracle& target_oracle, const Corpus& corpus,
                                  const TreeConfig& config, const Corpus& test, const Selector& selector,
                                  std::size_t n_shots) {
  if (corpus_digest(selection_oracle.corpus()) != corpus_digest(target_oracle.corpus())) {
    throw Error(ErrorKind::InvalidArgument, "selection and target oracles are bound to different corpora");
  }
  CrossModelResult r;
  r.feeder = approx_feeder(selection_oracle, corpus, config).feeder;
  r.accuracy = icl_accuracy(target_oracle, r.feeder, selector, n_shots, test, config.jobs);
  return r;
}

}  // namespace feeder
