#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include <feeder/synthetic_oracle.hpp>
#include <feeder/world_gen.hpp>

namespace testing {

using feeder::Corpus;
using feeder::DemoId;
using feeder::DemoSet;
using feeder::Demonstration;
using feeder::FactSet;
using feeder::SyntheticWorld;

struct Spec {
  std::string id;
  FactSet teaches;
  FactSet requires_;
};

struct Fixture {
  Corpus corpus;
  SyntheticWorld world;
  std::shared_ptr<const feeder::SyntheticOracle> oracle;
};

/// Texts are unique per id, so only same-id self-teaching applies.
inline Fixture make_fixture(const std::vector<Spec>& specs, FactSet base = {},
                            feeder::SyntheticOptions options = {}) {
  std::vector<Demonstration> demos;
  SyntheticWorld world;
  world.base_knowledge = std::move(base);
  for (const auto& s : specs) {
    demos.push_back({DemoId(s.id), "q " + s.id, "a " + s.id});
    world.teaches[DemoId(s.id)] = s.teaches;
    world.requirements[DemoId(s.id)] = s.requires_;
  }
  Fixture f{Corpus(demos), world, nullptr};
  f.oracle = feeder::make_synthetic_oracle(world, f.corpus, options);
  return f;
}

inline DemoSet S(std::initializer_list<std::string_view> ids) { return DemoSet::from_strings(ids); }

inline std::vector<std::string> names(const DemoSet& set) {
  std::vector<std::string> out;
  for (const auto& id : set) out.push_back(id.str());
  return out;
}

// W1 teaches the fact W2 needs; W3 and W4 need their own facts.
inline Fixture tournament_world() {
  return make_fixture({{"d1", {"F1"}, {"F1"}}, {"d2", {}, {"F1"}}, {"d3", {"F3"}, {"F3"}}, {"d4", {"F4"}, {"F4"}}});
}

// d3 alone teaches what d1, d2 and d4 teach together.
inline Fixture merge_tree_world() {
  return make_fixture({{"d1", {"P"}, {"P"}}, {"d2", {"Q"}, {"Q"}}, {"d3", {"P", "Q", "R"}, {"P", "Q", "R"}},
                       {"d4", {"R"}, {"R"}}});
}

// street + baker_london answer d_m; london_uk is known already.
inline Fixture two_fact_world() {
  return make_fixture({{"d_i", {"street"}, {"street"}},
                       {"d_j", {"baker_london"}, {"baker_london"}},
                       {"d_m", {}, {"street", "baker_london"}}},
                      {"london_uk"});
}

inline Fixture city_world() {
  return make_fixture({{"d_n", {"city"}, {"city"}}, {"d_m", {}, {"city"}}});
}

/// Fact-coverage verdict computed directly from the world description, with
/// no shared code path with the library oracle.
class Reference {
 public:
  Reference(const SyntheticWorld& world, const Corpus& corpus, bool self_teaching = true)
      : world_(world), self_teaching_(self_teaching) {
    for (const auto& d : corpus) text_[d.id.str()] = d.x + '\x1f' + d.y;
  }

  bool correct(const std::vector<std::string>& context, const std::string& query) const {
    std::set<std::string> known(world_.base_knowledge.begin(), world_.base_knowledge.end());
    for (const auto& c : context) {
      if (self_teaching_ && (c == query || text_.at(c) == text_.at(query))) return true;
      const auto& t = world_.teaches.at(DemoId(c));
      known.insert(t.begin(), t.end());
    }
    const auto& need = world_.requirements.at(DemoId(query));
    return std::includes(known.begin(), known.end(), need.begin(), need.end());
  }

  bool sufficient(const std::vector<std::string>& context, const std::vector<std::string>& queries) const {
    for (const auto& q : queries) {
      if (!correct(context, q)) return false;
    }
    return true;
  }

  bool sufficient(const DemoSet& context, const std::vector<std::string>& queries) const {
    return sufficient(names(context), queries);
  }

 private:
  const SyntheticWorld& world_;
  bool self_teaching_;
  std::map<std::string, std::string> text_;
};

inline std::vector<std::string> corpus_names(const Corpus& c) {
  std::vector<std::string> out;
  for (const auto& d : c) out.push_back(d.id.str());
  return out;
}

/// Subsets of `items` selected by the bits of `mask`.
inline std::vector<std::string> pick(const std::vector<std::string>& items, std::uint64_t mask) {
  std::vector<std::string> out;
  for (std::size_t b = 0; b < items.size(); ++b) {
    if (mask >> b & 1) out.push_back(items[b]);
  }
  return out;
}

inline std::vector<std::string> minus(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) == b.end()) out.push_back(x);
  }
  return out;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("feeder_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
