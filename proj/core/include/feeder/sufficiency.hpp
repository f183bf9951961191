#pragma once

#include <cstddef>

#include "feeder/oracle.hpp"

namespace feeder {

struct SufficiencyCheck {
  DemoSet w_in;
  DemoSet w_out;
  bool verdict = false;
  std::size_t oracle_calls = 0;  // <= |w_out|; stops at the first failing query
};

/// Plugging w_in alone (empty base context) answers every query in w_out.
/// Queries are checked in canonical id order; an empty w_out is vacuously
/// sufficient.
SufficiencyCheck check_sufficient(const Oracle& oracle, const DemoSet& w_in, const DemoSet& w_out);

inline bool set_sufficient(const Oracle& oracle, const DemoSet& w_in, const DemoSet& w_out) {
  return check_sufficient(oracle, w_in, w_out).verdict;
}

/// With `removed` unplugged from `context`, every query in `queries` is still
/// answered. Same short-circuit order and call accounting as check_sufficient.
SufficiencyCheck check_removable(const Oracle& oracle, const DemoSet& context, const DemoSet& removed,
                                 const DemoSet& queries);

/// Plugging `donor` into `context` corrects the answer to `target`.
/// Requires donor ∉ context and target initially wrong (StatusMismatch).
bool instance_sufficient(const Oracle& oracle, const Demonstration& donor, const Demonstration& target,
                         const DemoSet& context);

/// Unplugging `member` from `context` breaks the answer to `target`.
/// Requires member ∈ context and target initially right (StatusMismatch).
bool instance_necessary(const Oracle& oracle, const Demonstration& member, const Demonstration& target,
                        const DemoSet& context);

/// For every nonempty D' ⊆ d_in, some query of d_out fails with context \ D'.
/// Enumerates all 2^|d_in| - 1 unplug patterns; throws TooLargeForExhaustive
/// beyond max_size.
bool set_necessary_exhaustive(const Oracle& oracle, const DemoSet& d_in, const DemoSet& d_out, const DemoSet& context,
                              std::size_t max_size = 12);

}  // namespace feeder
