#include "feeder/sufficiency.hpp"

#include <vector>

#include "feeder/errors.hpp"

namespace feeder {

namespace {

SufficiencyCheck all_correct(const Oracle& oracle, const DemoSet& context, const DemoSet& queries) {
  SufficiencyCheck check;
  check.verdict = true;
  for (const auto& q : queries) {
    ++check.oracle_calls;
    if (!oracle.is_correct(context, q)) {
      check.verdict = false;
      break;
    }
  }
  return check;
}

}  // namespace

SufficiencyCheck check_sufficient(const Oracle& oracle, const DemoSet& w_in, const DemoSet& w_out) {
  auto check = all_correct(oracle, w_in, w_out);
  check.w_in = w_in;
  check.w_out = w_out;
  return check;
}

SufficiencyCheck check_removable(const Oracle& oracle, const DemoSet& context, const DemoSet& removed,
                                 const DemoSet& queries) {
  auto remaining = set_difference(context, removed);
  auto check = all_correct(oracle, remaining, queries);
  check.w_in = std::move(remaining);
  check.w_out = queries;
  return check;
}

bool instance_sufficient(const Oracle& oracle, const Demonstration& donor, const Demonstration& target,
                         const DemoSet& context) {
  if (context.contains(donor.id)) {
    throw Error(ErrorKind::StatusMismatch, "donor '" + donor.id.str() + "' is already in the context");
  }
  if (oracle.is_correct(context, target)) {
    throw Error(ErrorKind::StatusMismatch, "target '" + target.id.str() + "' is already answered correctly");
  }
  return oracle.is_correct(set_union(context, DemoSet::singleton(donor.id)), target);
}

bool instance_necessary(const Oracle& oracle, const Demonstration& member, const Demonstration& target,
                        const DemoSet& context) {
  if (!context.contains(member.id)) {
    throw Error(ErrorKind::StatusMismatch, "member '" + member.id.str() + "' is not in the context");
  }
  if (!oracle.is_correct(context, target)) {
    throw Error(ErrorKind::StatusMismatch, "target '" + target.id.str() + "' is not answered correctly");
  }
  return !oracle.is_correct(set_difference(context, DemoSet::singleton(member.id)), target);
}

bool set_necessary_exhaustive(const Oracle& oracle, const DemoSet& d_in, const DemoSet& d_out, const DemoSet& context,
                              std::size_t max_size) {
  if (d_in.size() > max_size) {
    throw Error(ErrorKind::TooLargeForExhaustive,
                "exhaustive necessity over " + std::to_string(d_in.size()) + " members exceeds the limit of " +
                    std::to_string(max_size));
  }
  if (!is_subset(d_in, context)) {
    throw Error(ErrorKind::InvalidArgument, "d_in must be a subset of the context");
  }
  const auto& members = d_in.members();
  const std::size_t k = members.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<DemoId> unplugged;
    for (std::size_t b = 0; b < k; ++b) {
      if (mask & (std::uint64_t{1} << b)) unplugged.push_back(members[b]);
    }
    const auto remaining = set_difference(context, DemoSet::from_ids(std::move(unplugged)));
    bool broke = false;
    for (const auto& q : d_out) {
      if (!oracle.is_correct(remaining, q)) {
        broke = true;
        break;
      }
    }
    if (!broke) return false;
  }
  return true;
}

}  // namespace feeder
