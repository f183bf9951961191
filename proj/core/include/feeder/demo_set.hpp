#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "feeder/digest.hpp"

namespace feeder {

/// Stable identifier of a demonstration. Ordered lexicographically by text.
class DemoId {
 public:
  DemoId() = default;
  explicit DemoId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend bool operator==(const DemoId&, const DemoId&) = default;
  friend std::strong_ordering operator<=>(const DemoId& a, const DemoId& b) {
    return a.value_.compare(b.value_) <=> 0;
  }

 private:
  std::string value_;
};

/// Canonical duplicate-free set of demonstration ids, the payload of every tree node.
///
/// Members are kept strictly increasing; the canonical hash is SHA-256 over the
/// length-prefixed member list, so equal sets hash equally across processes.
class DemoSet {
 public:
  using const_iterator = std::vector<DemoId>::const_iterator;

  DemoSet();
  static DemoSet from_ids(std::vector<DemoId> ids);
  static DemoSet from_strings(std::initializer_list<std::string_view> ids);
  static DemoSet singleton(DemoId id);

  const std::vector<DemoId>& members() const noexcept { return members_; }
  const Digest& canonical_hash() const noexcept { return hash_; }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(const DemoId& id) const;
  const_iterator begin() const noexcept { return members_.begin(); }
  const_iterator end() const noexcept { return members_.end(); }

  friend bool operator==(const DemoSet& a, const DemoSet& b) { return a.members_ == b.members_; }

 private:
  explicit DemoSet(std::vector<DemoId> sorted_unique);

  std::vector<DemoId> members_;
  Digest hash_;
};

DemoSet set_union(const DemoSet& a, const DemoSet& b);
DemoSet set_difference(const DemoSet& a, const DemoSet& b);
DemoSet set_intersection(const DemoSet& a, const DemoSet& b);
bool is_subset(const DemoSet& a, const DemoSet& b);
bool disjoint(const DemoSet& a, const DemoSet& b);

std::string to_string(const DemoSet& set);

}  // namespace feeder

template <>
struct std::hash<feeder::DemoId> {
  std::size_t operator()(const feeder::DemoId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
