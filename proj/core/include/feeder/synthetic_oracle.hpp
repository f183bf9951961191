#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "feeder/oracle.hpp"

namespace feeder {

using FactSet = std::set<std::string>;

/// Fact-coverage semantics: each demonstration teaches facts and its query
/// requires facts. A query is answered correctly when its requirements are
/// covered by base knowledge plus everything the context teaches.
struct SyntheticWorld {
  std::map<DemoId, FactSet> teaches;
  std::map<DemoId, FactSet> requirements;
  FactSet base_knowledge;

  /// Queries whose requirements no demonstration or base fact can ever cover.
  std::vector<DemoId> unanswerable() const;
  /// teaches(d) ⊆ requirements(d) ∪ base for every d. Under this condition set
  /// sufficiency is transitive.
  bool grounded() const;
};

/// Line-oriented world file: {"id", "teaches": [...], "requires": [...]} per
/// demonstration and one {"base": [...]} record.
SyntheticWorld read_world_jsonl(std::istream& in);
SyntheticWorld load_world(const std::filesystem::path& path);
std::string world_to_jsonl(const SyntheticWorld& world);

struct SyntheticOptions {
  /// A context member with the query's id, or with identical (x, y) text,
  /// answers the query.
  bool self_teaching = true;
};

class SyntheticOracle final : public Oracle {
 public:
  /// Every corpus id must have a world entry (NotInCorpus otherwise).
  SyntheticOracle(SyntheticWorld world, std::shared_ptr<const Corpus> corpus, SyntheticOptions options = {});

  const SyntheticWorld& world() const noexcept { return world_; }
  const SyntheticOptions& options() const noexcept { return options_; }
  std::shared_ptr<const Corpus> corpus_ptr() const noexcept { return corpus_; }

  Digest fingerprint() const override { return fingerprint_; }
  const Corpus& corpus() const override { return *corpus_; }

 protected:
  bool evaluate(const DemoSet& context, const Demonstration& query) const override;

 private:
  using Mask = std::vector<std::uint64_t>;

  SyntheticWorld world_;
  std::shared_ptr<const Corpus> corpus_;
  SyntheticOptions options_;
  Digest fingerprint_;
  std::size_t words_ = 1;
  Mask base_mask_;
  std::vector<Mask> teach_masks_;    // by corpus position
  std::vector<Mask> require_masks_;  // by corpus position
  std::vector<std::size_t> text_class_;
};

std::shared_ptr<const SyntheticOracle> make_synthetic_oracle(SyntheticWorld world, Corpus corpus,
                                                             SyntheticOptions options = {});

/// Tuning stand-in: base knowledge grows by the facts `dataset` teaches.
/// Throws UnsupportedTune for anything but a synthetic oracle.
OraclePtr absorb_facts(const Oracle& oracle, const DemoSet& dataset);

}  // namespace feeder
