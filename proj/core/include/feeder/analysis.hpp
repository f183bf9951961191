#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "feeder/approx.hpp"
#include "feeder/exact.hpp"
#include "feeder/selectors.hpp"

namespace feeder {

/// Mean 0/1 correctness over the test items, each answered with n_shots
/// demonstrations selected from `pool` for its own input.
double icl_accuracy(const Oracle& oracle, const DemoSet& pool, const Selector& selector, std::size_t n_shots,
                    const Corpus& test, unsigned jobs = 1);

struct TrialOutcome {
  bool plugged = false;  // E* when true, E otherwise
  bool correct = false;  // Y* when plugged, Y when not
  double probability = 0.0;
};

struct TrialSpace {
  std::vector<TrialOutcome> outcomes;
  /// Non-negative finite probabilities summing to 1 within 1e-12; throws Malformed.
  void validate() const;
};

TrialSpace read_trial_space_json(const std::string& text);

struct CausalProbabilities {
  double ps = 0.0;   // Pr(correct | plugged)
  double pn = 0.0;   // Pr(incorrect | unplugged)
  double pns = 0.0;  // counterfactual-pair enumeration
  double p_plugged_correct = 0.0;      // Pr(Y*, E*)
  double p_unplugged_incorrect = 0.0;  // Pr(Y, E) with Y = incorrect
  /// |pns - (Pr(Y,E)·PS + Pr(Y*,E*)·PN)|
  double residual = 0.0;
};

/// Throws ConditionUndefined when either arm has zero mass.
CausalProbabilities ps_pn_pns(const TrialSpace& space);

/// All inclusion-minimal S ⊆ corpus with set_sufficient(S, corpus), in
/// increasing (size, canonical order). Throws TooLarge beyond `limit`.
std::vector<DemoSet> brute_force_min_sufficient(const Oracle& oracle, const Corpus& corpus, std::size_t limit = 16);

struct ReductionReport {
  std::string algorithm;
  std::size_t input_size = 0;
  std::size_t output_size = 0;
  double reduction_ratio = 0.0;
  std::size_t oracle_calls = 0;
  std::size_t sufficiency_checks = 0;
  double wall_time_s = 0.0;
};

ReductionReport reduction_report(const ApproxResult& result, double wall_time_s = 0.0);
ReductionReport reduction_report(const ExactResult& result, std::size_t input_size, double wall_time_s = 0.0);

}  // namespace feeder
