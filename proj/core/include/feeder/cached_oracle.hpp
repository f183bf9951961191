#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>

#include "feeder/oracle.hpp"

namespace feeder {

/// Persistent verdict cache in front of another oracle.
///
/// The store is a JSONL file of {"fp","ctx","q","ok"} records, replayed at
/// open and appended on every miss. Records are keyed by the base oracle's
/// fingerprint, so one file may safely serve several oracles. Corrupt lines
/// are skipped with a warning. An empty path keeps the cache in memory only.
class CachedOracle final : public Oracle {
 public:
  using WarningSink = std::function<void(std::string_view)>;

  CachedOracle(OraclePtr base, std::filesystem::path path, WarningSink warn = {});

  std::size_t hits() const noexcept { return hits_.load(); }
  std::size_t misses() const noexcept { return misses_.load(); }
  std::size_t size() const;
  std::size_t skipped_lines() const noexcept { return skipped_; }

  Digest fingerprint() const override { return base_->fingerprint(); }
  const Corpus& corpus() const override { return base_->corpus(); }

 protected:
  bool evaluate(const DemoSet& context, const Demonstration& query) const override;

 private:
  using Key = std::tuple<std::string, std::string, std::string>;

  void replay();

  OraclePtr base_;
  std::filesystem::path path_;
  WarningSink warn_;
  std::string fp_hex_;
  mutable std::mutex mu_;
  mutable std::map<Key, bool> verdicts_;
  mutable std::ofstream out_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
  std::size_t skipped_ = 0;
};

OraclePtr cached(OraclePtr base, const std::filesystem::path& path, CachedOracle::WarningSink warn = {});

}  // namespace feeder
