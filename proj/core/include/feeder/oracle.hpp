#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "feeder/corpus.hpp"
#include "feeder/demo_set.hpp"
#include "feeder/digest.hpp"

namespace feeder {

/// The model under evaluation: answers a query with a plugged-in context and
/// judges the answer against the gold output.
///
/// Implementations must tolerate concurrent calls. Context ids and the query
/// must belong to corpus(); unknown ids raise NotInCorpus.
class Oracle {
 public:
  virtual ~Oracle() = default;

  bool is_correct(const DemoSet& context, const Demonstration& query) const {
    return evaluate(context, query);
  }
  bool is_correct(const DemoSet& context, const DemoId& query) const {
    return evaluate(context, corpus().at(query));
  }

  /// Identifies the oracle's behaviour; verdict caches are keyed on it.
  virtual Digest fingerprint() const = 0;
  /// Every demonstration the oracle can see, in ingestion order.
  virtual const Corpus& corpus() const = 0;

 protected:
  virtual bool evaluate(const DemoSet& context, const Demonstration& query) const = 0;
};

using OraclePtr = std::shared_ptr<const Oracle>;

/// Evaluates every call with `pinned` added to the supplied context, so the
/// base model together with a fixed plugged-in set behaves as a new model.
class PinnedContextOracle final : public Oracle {
 public:
  PinnedContextOracle(OraclePtr base, DemoSet pinned);

  const DemoSet& pinned() const noexcept { return pinned_; }
  const OraclePtr& base() const noexcept { return base_; }
  Digest fingerprint() const override { return fingerprint_; }
  const Corpus& corpus() const override { return base_->corpus(); }

 protected:
  bool evaluate(const DemoSet& context, const Demonstration& query) const override;

 private:
  OraclePtr base_;
  DemoSet pinned_;
  Digest fingerprint_;
};

OraclePtr with_pinned_context(OraclePtr base, DemoSet pinned);

/// Transparent wrapper counting delegated calls.
class CountingOracle final : public Oracle {
 public:
  explicit CountingOracle(OraclePtr base) : base_(std::move(base)) {}

  std::size_t calls() const noexcept { return calls_.load(); }
  void reset() noexcept { calls_.store(0); }
  Digest fingerprint() const override { return base_->fingerprint(); }
  const Corpus& corpus() const override { return base_->corpus(); }

 protected:
  bool evaluate(const DemoSet& context, const Demonstration& query) const override {
    calls_.fetch_add(1);
    return base_->is_correct(context, query);
  }

 private:
  OraclePtr base_;
  mutable std::atomic<std::size_t> calls_{0};
};

enum class CompareMode { Exact, Containment };

/// Lower-cases ASCII letters, collapses whitespace runs to one space and trims.
std::string normalize_answer(std::string_view text);
/// Exact: normalized strings equal. Containment: normalized gold occurs in the
/// normalized generation.
bool answers_match(std::string_view generated, std::string_view gold, CompareMode mode);

/// Digest of every (id, x, y) record, independent of ingestion order.
Digest corpus_digest(const Corpus& corpus);

}  // namespace feeder
