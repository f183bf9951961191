#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "feeder/demo_set.hpp"

namespace feeder {

/// One (input, output) training example.
struct Demonstration {
  DemoId id;
  std::string x;
  std::string y;

  friend bool operator==(const Demonstration&, const Demonstration&) = default;
};

/// Ordered collection of demonstrations with unique ids. Iteration order is
/// ingestion order.
class Corpus {
 public:
  using const_iterator = std::vector<Demonstration>::const_iterator;

  Corpus() = default;
  /// Throws DuplicateId or InvalidDemonstration.
  explicit Corpus(std::vector<Demonstration> demos);

  std::size_t size() const noexcept { return demos_.size(); }
  bool empty() const noexcept { return demos_.empty(); }
  const_iterator begin() const noexcept { return demos_.begin(); }
  const_iterator end() const noexcept { return demos_.end(); }
  const Demonstration& operator[](std::size_t i) const { return demos_[i]; }
  std::span<const Demonstration> demos() const noexcept { return demos_; }

  bool contains(const DemoId& id) const { return index_.contains(id); }
  std::optional<std::size_t> position(const DemoId& id) const;
  /// Throws NotInCorpus.
  const Demonstration& at(const DemoId& id) const;

  /// All ids as a canonical set.
  DemoSet ids() const;
  /// Canonical set over ids drawn from this corpus; throws NotInCorpus.
  DemoSet make_set(std::span<const DemoId> ids) const;
  /// Members of `set` in ingestion order; throws NotInCorpus.
  std::vector<DemoId> in_corpus_order(const DemoSet& set) const;
  /// Sub-corpus restricted to `set`, preserving ingestion order.
  Corpus subset(const DemoSet& set) const;
  /// This corpus followed by records of `other` not already present. A shared
  /// id must carry identical text, else DuplicateId.
  Corpus merged(const Corpus& other) const;

 private:
  std::vector<Demonstration> demos_;
  std::unordered_map<DemoId, std::size_t> index_;
};

/// JSONL: one {"id","x","y"} object per line; unknown keys are ignored.
Corpus read_corpus_jsonl(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);
std::string demonstration_json(const Demonstration& demo);
std::string corpus_to_jsonl(const Corpus& corpus);

}  // namespace feeder
