#include "feeder/demo_set.hpp"

#include <algorithm>
#include <iterator>

namespace feeder {

namespace {

Digest hash_members(const std::vector<DemoId>& members) {
  Hasher h;
  h.field(static_cast<std::uint64_t>(members.size()));
  for (const auto& id : members) h.field(id.str());
  return h.finish();
}

}  // namespace

DemoSet::DemoSet() : hash_(hash_members(members_)) {}

DemoSet::DemoSet(std::vector<DemoId> sorted_unique)
    : members_(std::move(sorted_unique)), hash_(hash_members(members_)) {}

DemoSet DemoSet::from_ids(std::vector<DemoId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return DemoSet(std::move(ids));
}

DemoSet DemoSet::from_strings(std::initializer_list<std::string_view> ids) {
  std::vector<DemoId> v;
  v.reserve(ids.size());
  for (auto s : ids) v.emplace_back(std::string(s));
  return from_ids(std::move(v));
}

DemoSet DemoSet::singleton(DemoId id) { return DemoSet(std::vector<DemoId>{std::move(id)}); }

bool DemoSet::contains(const DemoId& id) const {
  return std::binary_search(members_.begin(), members_.end(), id);
}

DemoSet set_union(const DemoSet& a, const DemoSet& b) {
  std::vector<DemoId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return DemoSet::from_ids(std::move(out));
}

DemoSet set_difference(const DemoSet& a, const DemoSet& b) {
  std::vector<DemoId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return DemoSet::from_ids(std::move(out));
}

DemoSet set_intersection(const DemoSet& a, const DemoSet& b) {
  std::vector<DemoId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return DemoSet::from_ids(std::move(out));
}

bool is_subset(const DemoSet& a, const DemoSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const DemoSet& a, const DemoSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

std::string to_string(const DemoSet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& id : set) {
    if (!first) out += ",";
    out += id.str();
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace feeder
