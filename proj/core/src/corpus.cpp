#include "feeder/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include <json.hpp>

#include "feeder/errors.hpp"

namespace feeder {

using nlohmann::json;

Corpus::Corpus(std::vector<Demonstration> demos) : demos_(std::move(demos)) {
  index_.reserve(demos_.size());
  for (std::size_t i = 0; i < demos_.size(); ++i) {
    const auto& d = demos_[i];
    if (d.id.empty()) throw Error(ErrorKind::InvalidDemonstration, "demonstration id is empty");
    if (d.x.empty()) {
      throw Error(ErrorKind::InvalidDemonstration, "demonstration '" + d.id.str() + "' has empty input");
    }
    if (!index_.emplace(d.id, i).second) {
      throw Error(ErrorKind::DuplicateId, "duplicate demonstration id '" + d.id.str() + "'");
    }
  }
}

std::optional<std::size_t> Corpus::position(const DemoId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Demonstration& Corpus::at(const DemoId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorKind::NotInCorpus, "unknown demonstration id '" + id.str() + "'");
  return demos_[it->second];
}

DemoSet Corpus::ids() const {
  std::vector<DemoId> v;
  v.reserve(demos_.size());
  for (const auto& d : demos_) v.push_back(d.id);
  return DemoSet::from_ids(std::move(v));
}

DemoSet Corpus::make_set(std::span<const DemoId> ids) const {
  std::vector<DemoId> v(ids.begin(), ids.end());
  for (const auto& id : v) {
    if (!contains(id)) throw Error(ErrorKind::NotInCorpus, "unknown demonstration id '" + id.str() + "'");
  }
  return DemoSet::from_ids(std::move(v));
}

std::vector<DemoId> Corpus::in_corpus_order(const DemoSet& set) const {
  std::vector<std::size_t> positions;
  positions.reserve(set.size());
  for (const auto& id : set) {
    auto p = position(id);
    if (!p) throw Error(ErrorKind::NotInCorpus, "unknown demonstration id '" + id.str() + "'");
    positions.push_back(*p);
  }
  std::sort(positions.begin(), positions.end());
  std::vector<DemoId> out;
  out.reserve(positions.size());
  for (auto p : positions) out.push_back(demos_[p].id);
  return out;
}

Corpus Corpus::subset(const DemoSet& set) const {
  std::vector<Demonstration> out;
  out.reserve(set.size());
  for (const auto& id : in_corpus_order(set)) out.push_back(at(id));
  return Corpus(std::move(out));
}

Corpus Corpus::merged(const Corpus& other) const {
  std::vector<Demonstration> out = demos_;
  for (const auto& d : other) {
    if (auto p = position(d.id)) {
      if (!(demos_[*p] == d)) {
        throw Error(ErrorKind::DuplicateId, "id '" + d.id.str() + "' appears with different content");
      }
      continue;
    }
    out.push_back(d);
  }
  return Corpus(std::move(out));
}

Corpus read_corpus_jsonl(std::istream& in) {
  std::vector<Demonstration> demos;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::Malformed, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("x") || !rec["id"].is_string() ||
        !rec["x"].is_string() || (rec.contains("y") && !rec["y"].is_string())) {
      throw Error(ErrorKind::Malformed, "line " + std::to_string(lineno) + ": expected {\"id\",\"x\",\"y\"} strings");
    }
    demos.push_back(Demonstration{DemoId(rec["id"].get<std::string>()), rec["x"].get<std::string>(),
                                  rec.value("y", std::string{})});
  }
  return Corpus(std::move(demos));
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InputNotFound, "cannot open corpus file " + path.string());
  return read_corpus_jsonl(in);
}

std::string demonstration_json(const Demonstration& demo) {
  json rec = json::object();
  rec["id"] = demo.id.str();
  rec["x"] = demo.x;
  rec["y"] = demo.y;
  return rec.dump();
}

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& d : corpus) {
    out += demonstration_json(d);
    out += '\n';
  }
  return out;
}

}  // namespace feeder
