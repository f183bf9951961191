#include "feeder/approx.hpp"

#include "feeder/parallel.hpp"
#include "feeder/random.hpp"
#include "feeder/sufficiency.hpp"

namespace feeder {

std::string_view to_string(PairCase c) {
  switch (c) {
    case PairCase::MutuallySufficient: return "I";
    case PairCase::LeftSufficient: return "II-left";
    case PairCase::RightSufficient: return "II-right";
    case PairCase::Neither: return "III";
  }
  return "?";
}

RoundTrace run_round(const Oracle& oracle, std::vector<DemoSet> nodes, const PairingOrder& order, unsigned jobs) {
  if (nodes.empty()) throw Error(ErrorKind::InvalidArgument, "run_round needs at least one node");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (!disjoint(nodes[i], nodes[j])) {
        throw Error(ErrorKind::NodesNotDisjoint, "tree nodes " + to_string(nodes[i]) + " and " + to_string(nodes[j]) +
                                                     " overlap");
      }
    }
  }
  if (order.shuffle) {
    auto perm = seeded_permutation(nodes.size(), order.seed);
    std::vector<DemoSet> shuffled;
    shuffled.reserve(nodes.size());
    for (auto p : perm) shuffled.push_back(std::move(nodes[p]));
    nodes = std::move(shuffled);
  }

  RoundTrace trace;
  const std::size_t n_pairs = nodes.size() / 2;
  // checks[2p] = (a) left plugged for right; checks[2p+1] = (b) right plugged for left.
  std::vector<SufficiencyCheck> checks(2 * n_pairs);
  parallel_for(checks.size(), jobs, [&](std::size_t t) {
    const auto& left = nodes[2 * (t / 2)];
    const auto& right = nodes[2 * (t / 2) + 1];
    checks[t] = (t % 2 == 0) ? check_sufficient(oracle, left, right) : check_sufficient(oracle, right, left);
  });

  for (std::size_t p = 0; p < n_pairs; ++p) {
    const auto& left = nodes[2 * p];
    const auto& right = nodes[2 * p + 1];
    const bool a = checks[2 * p].verdict;
    const bool b = checks[2 * p + 1].verdict;
    trace.oracle_calls += checks[2 * p].oracle_calls + checks[2 * p + 1].oracle_calls;
    trace.sufficiency_checks += 2;

    PairOutcome outcome{left, right, PairCase::Neither, {}};
    if (a && b) {
      outcome.kind = PairCase::MutuallySufficient;
      outcome.survivor = left.size() >= right.size() ? right : left;
    } else if (a) {
      outcome.kind = PairCase::LeftSufficient;
      outcome.survivor = left;
    } else if (b) {
      outcome.kind = PairCase::RightSufficient;
      outcome.survivor = right;
    } else {
      outcome.survivor = set_union(left, right);
    }
    trace.survivors.push_back(outcome.survivor);
    trace.pairs.push_back(std::move(outcome));
  }
  if (nodes.size() % 2 == 1) {
    trace.carried = nodes.back();
    trace.survivors.push_back(nodes.back());
  }
  return trace;
}

ApproxResult approx_feeder(const Oracle& oracle, const Corpus& corpus, const TreeConfig& config) {
  std::vector<DemoId> ids;
  ids.reserve(corpus.size());
  for (const auto& d : corpus) ids.push_back(d.id);
  return approx_feeder(oracle, ids, config);
}

ApproxResult approx_feeder(const Oracle& oracle, std::span<const DemoId> ordered_input, const TreeConfig& config) {
  config.validate();
  if (ordered_input.empty()) throw Error(ErrorKind::EmptyInput, "approx_feeder needs a non-empty input");

  ApproxResult result;
  result.input_size = DemoSet::from_ids({ordered_input.begin(), ordered_input.end()}).size();
  std::vector<DemoId> run_input(ordered_input.begin(), ordered_input.end());

  for (int run = 1; run <= config.runs; ++run) {
    std::vector<DemoSet> nodes;
    nodes.reserve(run_input.size());
    for (const auto& id : run_input) nodes.push_back(DemoSet::singleton(id));

    RunSummary summary;
    summary.run_index = run;
    summary.input_size = nodes.size();
    for (int round = 1; round <= config.rounds; ++round) {
      if (nodes.size() == 1) {
        summary.early_stop = true;
        break;
      }
      const PairingOrder order{config.shuffle_pairs,
                               mix_seed(config.pairing_seed, (static_cast<std::uint64_t>(run) << 32) |
                                                                 static_cast<std::uint64_t>(round))};
      RoundTrace trace;
      try {
        trace = run_round(oracle, std::move(nodes), order, config.jobs);
      } catch (const RunAborted&) {
        throw;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NodesNotDisjoint || e.kind() == ErrorKind::InvalidArgument) throw;
        throw RunAborted(e.kind(), e.what(), std::move(result.rounds));
      }
      trace.run_index = run;
      trace.round_index = round;
      result.oracle_calls += trace.oracle_calls;
      result.sufficiency_checks += trace.sufficiency_checks;
      nodes = trace.survivors;
      result.rounds.push_back(std::move(trace));
      ++summary.rounds_executed;
    }
    if (!summary.early_stop && nodes.size() == 1 && summary.rounds_executed < config.rounds) summary.early_stop = true;

    DemoSet output;
    for (const auto& node : nodes) output = set_union(output, node);
    summary.output_size = output.size();
    result.runs.push_back(summary);
    result.feeder = output;
    run_input = output.members();
  }
  return result;
}

std::size_t call_budget(std::size_t n, const TreeConfig& config) {
  config.validate();
  std::size_t per_run = 0;
  std::size_t m = n;
  for (int k = 0; k < config.rounds && m > 1; ++k) {
    per_run += 2 * (m / 2);
    m = (m + 1) / 2;
  }
  return per_run * static_cast<std::size_t>(config.runs);
}

}  // namespace feeder
