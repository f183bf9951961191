#include "feeder/synthetic_oracle.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <utility>

#include <json.hpp>

#include "feeder/errors.hpp"

namespace feeder {

using nlohmann::json;

std::vector<DemoId> SyntheticWorld::unanswerable() const {
  FactSet available = base_knowledge;
  for (const auto& [id, facts] : teaches) available.insert(facts.begin(), facts.end());
  std::vector<DemoId> out;
  for (const auto& [id, facts] : requirements) {
    for (const auto& f : facts) {
      if (!available.contains(f)) {
        out.push_back(id);
        break;
      }
    }
  }
  return out;
}

bool SyntheticWorld::grounded() const {
  static const FactSet kEmpty;
  for (const auto& [id, taught] : teaches) {
    auto it = requirements.find(id);
    const FactSet& req = it == requirements.end() ? kEmpty : it->second;
    for (const auto& f : taught) {
      if (!req.contains(f) && !base_knowledge.contains(f)) return false;
    }
  }
  return true;
}

namespace {

FactSet read_facts(const json& rec, const char* key, std::size_t lineno) {
  FactSet out;
  if (!rec.contains(key)) return out;
  const auto& arr = rec[key];
  if (!arr.is_array()) throw Error(ErrorKind::Malformed, "line " + std::to_string(lineno) + ": '" + key + "' must be an array");
  for (const auto& f : arr) {
    if (!f.is_string()) throw Error(ErrorKind::Malformed, "line " + std::to_string(lineno) + ": facts must be strings");
    out.insert(f.get<std::string>());
  }
  return out;
}

json facts_json(const FactSet& facts) {
  json arr = json::array();
  for (const auto& f : facts) arr.push_back(f);
  return arr;
}

}  // namespace

SyntheticWorld read_world_jsonl(std::istream& in) {
  SyntheticWorld world;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::Malformed, "world line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!rec.is_object()) throw Error(ErrorKind::Malformed, "world line " + std::to_string(lineno) + ": expected object");
    if (rec.contains("base")) {
      auto base = read_facts(rec, "base", lineno);
      world.base_knowledge.insert(base.begin(), base.end());
      continue;
    }
    if (!rec.contains("id") || !rec["id"].is_string()) {
      throw Error(ErrorKind::Malformed, "world line " + std::to_string(lineno) + ": missing id");
    }
    DemoId id(rec["id"].get<std::string>());
    if (world.teaches.contains(id)) throw Error(ErrorKind::DuplicateId, "world repeats id '" + id.str() + "'");
    world.teaches[id] = read_facts(rec, "teaches", lineno);
    world.requirements[id] = read_facts(rec, "requires", lineno);
  }
  return world;
}

SyntheticWorld load_world(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InputNotFound, "cannot open world file " + path.string());
  return read_world_jsonl(in);
}

std::string world_to_jsonl(const SyntheticWorld& world) {
  std::string out;
  json base = json::object();
  base["base"] = facts_json(world.base_knowledge);
  out += base.dump() + "\n";
  for (const auto& [id, taught] : world.teaches) {
    json rec = json::object();
    rec["id"] = id.str();
    rec["teaches"] = facts_json(taught);
    auto it = world.requirements.find(id);
    rec["requires"] = facts_json(it == world.requirements.end() ? FactSet{} : it->second);
    out += rec.dump() + "\n";
  }
  return out;
}

SyntheticOracle::SyntheticOracle(SyntheticWorld world, std::shared_ptr<const Corpus> corpus,
                                 SyntheticOptions options)
    : world_(std::move(world)), corpus_(std::move(corpus)), options_(options) {
  std::map<std::string, std::size_t> fact_index;
  auto intern = [&](const FactSet& facts) {
    for (const auto& f : facts) fact_index.emplace(f, fact_index.size());
  };
  intern(world_.base_knowledge);
  for (const auto& [id, facts] : world_.teaches) intern(facts);
  for (const auto& [id, facts] : world_.requirements) intern(facts);
  words_ = std::max<std::size_t>(1, (fact_index.size() + 63) / 64);

  auto to_mask = [&](const FactSet& facts) {
    Mask m(words_, 0);
    for (const auto& f : facts) {
      auto bit = fact_index.at(f);
      m[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
    return m;
  };
  base_mask_ = to_mask(world_.base_knowledge);

  std::map<std::pair<std::string, std::string>, std::size_t> classes;
  teach_masks_.reserve(corpus_->size());
  require_masks_.reserve(corpus_->size());
  text_class_.reserve(corpus_->size());
  for (const auto& d : *corpus_) {
    auto t = world_.teaches.find(d.id);
    auto r = world_.requirements.find(d.id);
    if (t == world_.teaches.end() || r == world_.requirements.end()) {
      throw Error(ErrorKind::NotInCorpus, "synthetic world has no entry for '" + d.id.str() + "'");
    }
    teach_masks_.push_back(to_mask(t->second));
    require_masks_.push_back(to_mask(r->second));
    text_class_.push_back(classes.emplace(std::make_pair(d.x, d.y), classes.size()).first->second);
  }

  Hasher h;
  h.field("synthetic").field(static_cast<std::uint64_t>(options_.self_teaching));
  h.field(static_cast<std::uint64_t>(world_.base_knowledge.size()));
  for (const auto& f : world_.base_knowledge) h.field(f);
  h.field(static_cast<std::uint64_t>(world_.teaches.size()));
  for (const auto& [id, taught] : world_.teaches) {
    h.field(id.str());
    h.field(static_cast<std::uint64_t>(taught.size()));
    for (const auto& f : taught) h.field(f);
    auto r = world_.requirements.find(id);
    const FactSet req = r == world_.requirements.end() ? FactSet{} : r->second;
    h.field(static_cast<std::uint64_t>(req.size()));
    for (const auto& f : req) h.field(f);
  }
  h.field(corpus_digest(*corpus_));
  fingerprint_ = h.finish();
}

bool SyntheticOracle::evaluate(const DemoSet& context, const Demonstration& query) const {
  const auto qpos = corpus_->position(query.id);
  if (!qpos) throw Error(ErrorKind::NotInCorpus, "query '" + query.id.str() + "' is not in the oracle corpus");

  Mask known = base_mask_;
  for (const auto& id : context) {
    const auto pos = corpus_->position(id);
    if (!pos) throw Error(ErrorKind::NotInCorpus, "context id '" + id.str() + "' is not in the oracle corpus");
    if (options_.self_teaching && text_class_[*pos] == text_class_[*qpos]) return true;
    const auto& t = teach_masks_[*pos];
    for (std::size_t w = 0; w < words_; ++w) known[w] |= t[w];
  }
  const auto& need = require_masks_[*qpos];
  for (std::size_t w = 0; w < words_; ++w) {
    if ((need[w] & ~known[w]) != 0) return false;
  }
  return true;
}

std::shared_ptr<const SyntheticOracle> make_synthetic_oracle(SyntheticWorld world, Corpus corpus,
                                                             SyntheticOptions options) {
  return std::make_shared<SyntheticOracle>(std::move(world), std::make_shared<const Corpus>(std::move(corpus)),
                                           options);
}

OraclePtr absorb_facts(const Oracle& oracle, const DemoSet& dataset) {
  const auto* synthetic = dynamic_cast<const SyntheticOracle*>(&oracle);
  if (synthetic == nullptr) throw Error(ErrorKind::UnsupportedTune, "absorb_facts requires a synthetic oracle");
  SyntheticWorld world = synthetic->world();
  for (const auto& id : dataset) {
    if (!synthetic->corpus().contains(id)) {
      throw Error(ErrorKind::NotInCorpus, "tuning id '" + id.str() + "' is not in the oracle corpus");
    }
    auto it = world.teaches.find(id);
    if (it != world.teaches.end()) world.base_knowledge.insert(it->second.begin(), it->second.end());
  }
  return std::make_shared<SyntheticOracle>(std::move(world), synthetic->corpus_ptr(), synthetic->options());
}

}  // namespace feeder
