#include "feeder/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "feeder/errors.hpp"

namespace feeder {

PinnedContextOracle::PinnedContextOracle(OraclePtr base, DemoSet pinned)
    : base_(std::move(base)), pinned_(std::move(pinned)) {
  for (const auto& id : pinned_) {
    if (!base_->corpus().contains(id)) {
      throw Error(ErrorKind::NotInCorpus, "pinned id '" + id.str() + "' is not in the oracle corpus");
    }
  }
  fingerprint_ = Hasher{}.field("pinned").field(base_->fingerprint()).field(pinned_.canonical_hash()).finish();
}

bool PinnedContextOracle::evaluate(const DemoSet& context, const Demonstration& query) const {
  if (pinned_.empty()) return base_->is_correct(context, query);
  return base_->is_correct(set_union(pinned_, context), query);
}

OraclePtr with_pinned_context(OraclePtr base, DemoSet pinned) {
  return std::make_shared<PinnedContextOracle>(std::move(base), std::move(pinned));
}

std::string normalize_answer(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

bool answers_match(std::string_view generated, std::string_view gold, CompareMode mode) {
  const auto g = normalize_answer(generated);
  const auto y = normalize_answer(gold);
  if (mode == CompareMode::Exact) return g == y;
  if (y.empty()) return g.empty();
  return g.find(y) != std::string::npos;
}

Digest corpus_digest(const Corpus& corpus) {
  std::vector<const Demonstration*> sorted;
  sorted.reserve(corpus.size());
  for (const auto& d : corpus) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
  Hasher h;
  h.field(static_cast<std::uint64_t>(sorted.size()));
  for (const auto* d : sorted) h.field(d->id.str()).field(d->x).field(d->y);
  return h.finish();
}

}  // namespace feeder
