#include "feeder/cached_oracle.hpp"

#include <iostream>

#include <json.hpp>

#include "feeder/errors.hpp"

namespace feeder {

using nlohmann::json;

CachedOracle::CachedOracle(OraclePtr base, std::filesystem::path path, WarningSink warn)
    : base_(std::move(base)), path_(std::move(path)), warn_(std::move(warn)), fp_hex_(base_->fingerprint().hex()) {
  if (!warn_) warn_ = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  if (path_.empty()) return;
  replay();
  out_.open(path_, std::ios::app | std::ios::binary);
  if (!out_) throw Error(ErrorKind::Io, "cannot open verdict cache " + path_.string() + " for appending");
}

void CachedOracle::replay() {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto skip = [&](std::string_view why) {
      ++skipped_;
      warn_("verdict cache " + path_.string() + " line " + std::to_string(lineno) + " skipped: " + std::string(why));
    };
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error&) {
      skip("not valid JSON");
      continue;
    }
    if (!rec.is_object() || !rec.contains("fp") || !rec.contains("ctx") || !rec.contains("q") || !rec.contains("ok") ||
        !rec["fp"].is_string() || !rec["ctx"].is_string() || !rec["q"].is_string() || !rec["ok"].is_boolean()) {
      skip("missing or mistyped fields");
      continue;
    }
    const auto& fp = rec["fp"].get_ref<const std::string&>();
    const auto& ctx = rec["ctx"].get_ref<const std::string&>();
    if (fp.size() != 64 || ctx.size() != 64) {
      skip("digest fields must be 64 hex characters");
      continue;
    }
    Key key{fp, ctx, rec["q"].get<std::string>()};
    const bool ok = rec["ok"].get<bool>();
    auto [it, inserted] = verdicts_.emplace(std::move(key), ok);
    if (!inserted && it->second != ok) {
      skip("contradicts an earlier record for the same key");
      verdicts_.erase(it);
    }
  }
}

std::size_t CachedOracle::size() const {
  std::lock_guard lock(mu_);
  return verdicts_.size();
}

bool CachedOracle::evaluate(const DemoSet& context, const Demonstration& query) const {
  Key key{fp_hex_, context.canonical_hash().hex(), query.id.str()};
  {
    std::lock_guard lock(mu_);
    if (auto it = verdicts_.find(key); it != verdicts_.end()) {
      hits_.fetch_add(1);
      return it->second;
    }
  }
  const bool ok = base_->is_correct(context, query);
  misses_.fetch_add(1);

  std::lock_guard lock(mu_);
  if (verdicts_.emplace(key, ok).second && out_.is_open()) {
    json rec = json::object();
    rec["fp"] = std::get<0>(key);
    rec["ctx"] = std::get<1>(key);
    rec["q"] = std::get<2>(key);
    rec["ok"] = ok;
    out_ << rec.dump() << '\n';
    out_.flush();
  }
  return ok;
}

OraclePtr cached(OraclePtr base, const std::filesystem::path& path, CachedOracle::WarningSink warn) {
  return std::make_shared<CachedOracle>(std::move(base), path, std::move(warn));
}

}  // namespace feeder
