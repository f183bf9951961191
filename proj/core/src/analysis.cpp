#include "feeder/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "feeder/errors.hpp"
#include "feeder/parallel.hpp"

namespace feeder {

double icl_accuracy(const Oracle& oracle, const DemoSet& pool, const Selector& selector, std::size_t n_shots,
                    const Corpus& test, unsigned jobs) {
  if (test.empty()) throw Error(ErrorKind::InvalidArgument, "test set is empty");
  if (pool.empty()) throw Error(ErrorKind::EmptyPool, "selection pool is empty");
  const Corpus& corpus = oracle.corpus();
  std::vector<Demonstration> pool_demos;
  for (const auto& id : corpus.in_corpus_order(pool)) pool_demos.push_back(corpus.at(id));

  std::vector<char> correct(test.size(), 0);
  parallel_for(test.size(), jobs, [&](std::size_t i) {
    const auto& item = test[i];
    std::vector<DemoId> ids;
    for (const auto& d : selector.select(pool_demos, item.x, n_shots)) ids.push_back(d.id);
    correct[i] = oracle.is_correct(DemoSet::from_ids(std::move(ids)), item) ? 1 : 0;
  });
  std::size_t hits = 0;
  for (char c : correct) hits += c ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

void TrialSpace::validate() const {
  if (outcomes.empty()) throw Error(ErrorKind::Malformed, "trial space has no outcomes");
  double total = 0.0;
  for (const auto& o : outcomes) {
    if (!std::isfinite(o.probability) || o.probability < 0.0) {
      throw Error(ErrorKind::Malformed, "trial space probabilities must be finite and non-negative");
    }
    total += o.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::Malformed, "trial space probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

TrialSpace read_trial_space_json(const std::string& text) {
  using nlohmann::json;
  TrialSpace space;
  try {
    const auto doc = json::parse(text);
    for (const auto& o : doc.at("outcomes")) {
      space.outcomes.push_back({o.at("plugged").get<bool>(), o.at("correct").get<bool>(), o.at("p").get<double>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Malformed, std::string("trial space: ") + e.what());
  }
  space.validate();
  return space;
}

CausalProbabilities ps_pn_pns(const TrialSpace& space) {
  space.validate();
  double p_plugged = 0.0, p_unplugged = 0.0;
  CausalProbabilities r;
  for (const auto& o : space.outcomes) {
    if (o.plugged) {
      p_plugged += o.probability;
      if (o.correct) r.p_plugged_correct += o.probability;
    } else {
      p_unplugged += o.probability;
      if (!o.correct) r.p_unplugged_incorrect += o.probability;
    }
  }
  if (p_plugged <= 0.0) throw Error(ErrorKind::ConditionUndefined, "Pr(plugged) is zero");
  if (p_unplugged <= 0.0) throw Error(ErrorKind::ConditionUndefined, "Pr(unplugged) is zero");
  r.ps = r.p_plugged_correct / p_plugged;
  r.pn = r.p_unplugged_incorrect / p_unplugged;

  // Each observed outcome is paired with an independent draw from the other
  // arm's conditional distribution. The pair counts when the observed arm
  // shows its own event and the counterfactual arm shows the other.
  double pns = 0.0;
  for (const auto& obs : space.outcomes) {
    for (const auto& cf : space.outcomes) {
      if (cf.plugged == obs.plugged) continue;
      const double weight = obs.probability * cf.probability / (cf.plugged ? p_plugged : p_unplugged);
      const bool obs_event = obs.plugged ? obs.correct : !obs.correct;
      const bool cf_event = cf.plugged ? cf.correct : !cf.correct;
      if (obs_event && cf_event) pns += weight;
    }
  }
  r.pns = pns;
  r.residual = std::abs(pns - (r.p_unplugged_incorrect * r.ps + r.p_plugged_correct * r.pn));
  return r;
}

std::vector<DemoSet> brute_force_min_sufficient(const Oracle& oracle, const Corpus& corpus, std::size_t limit) {
  const std::size_t n = corpus.size();
  if (n > limit) {
    throw Error(ErrorKind::TooLarge,
                "brute force over " + std::to_string(n) + " demonstrations exceeds the limit of " + std::to_string(limit));
  }
  const std::size_t masks = std::size_t{1} << n;
  std::vector<char> sufficient(masks, 0);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    std::vector<DemoId> ids;
    for (std::size_t b = 0; b < n; ++b) {
      if (mask >> b & 1) ids.push_back(corpus[b].id);
    }
    const auto ctx = DemoSet::from_ids(std::move(ids));
    bool all = true;
    for (const auto& q : corpus) {
      if (!oracle.is_correct(ctx, q)) {
        all = false;
        break;
      }
    }
    sufficient[mask] = all ? 1 : 0;
  }
  // below[mask]: some proper subset of mask is sufficient.
  std::vector<char> below(masks, 0);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    for (std::size_t b = 0; b < n && !below[mask]; ++b) {
      if (mask >> b & 1) {
        const std::size_t sub = mask & ~(std::size_t{1} << b);
        if (sufficient[sub] || below[sub]) below[mask] = 1;
      }
    }
  }
  std::vector<DemoSet> out;
  for (std::size_t mask = 0; mask < masks; ++mask) {
    if (!sufficient[mask] || below[mask]) continue;
    std::vector<DemoId> ids;
    for (std::size_t b = 0; b < n; ++b) {
      if (mask >> b & 1) ids.push_back(corpus[b].id);
    }
    out.push_back(DemoSet::from_ids(std::move(ids)));
  }
  std::sort(out.begin(), out.end(), [](const DemoSet& a, const DemoSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

namespace {

double ratio(std::size_t in, std::size_t out) {
  return in == 0 ? 0.0 : 1.0 - static_cast<double>(out) / static_cast<double>(in);
}

}  // namespace

ReductionReport reduction_report(const ApproxResult& result, double wall_time_s) {
  ReductionReport r;
  r.algorithm = "approx";
  r.input_size = result.input_size;
  r.output_size = result.feeder.size();
  r.reduction_ratio = ratio(r.input_size, r.output_size);
  r.oracle_calls = result.oracle_calls;
  r.sufficiency_checks = result.sufficiency_checks;
  r.wall_time_s = wall_time_s;
  return r;
}

ReductionReport reduction_report(const ExactResult& result, std::size_t input_size, double wall_time_s) {
  ReductionReport r;
  r.algorithm = result.trace.algorithm;
  r.input_size = input_size;
  r.output_size = result.feeder.size();
  r.reduction_ratio = ratio(r.input_size, r.output_size);
  r.oracle_calls = result.trace.oracle_calls;
  r.wall_time_s = wall_time_s;
  return r;
}

}  // namespace feeder
