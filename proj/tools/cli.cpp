#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include <feeder/analysis.hpp>
#include <feeder/approx.hpp>
#include <feeder/cached_oracle.hpp>
#include <feeder/exact.hpp>
#include <feeder/export.hpp>
#include <feeder/fileio.hpp>
#include <feeder/llm_oracle.hpp>
#include <feeder/pipeline.hpp>
#include <feeder/synthetic_oracle.hpp>

namespace feeder::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct LoadedOracle {
  OraclePtr oracle;
  std::shared_ptr<const CachedOracle> cache;
  std::string config_text;

  std::size_t delegated(std::size_t logical) const { return cache ? cache->misses() : logical; }
};

LlmEndpointConfig llm_config(const json& j) {
  LlmEndpointConfig c;
  c.base_url = j.at("base_url").get<std::string>();
  c.path = j.value("path", c.path);
  c.model_name = j.value("model", c.model_name);
  c.api_key_env = j.value("api_key_env", c.api_key_env);
  c.temperature = j.value("temperature", c.temperature);
  c.allow_nonzero_temperature = j.value("allow_nonzero_temperature", c.allow_nonzero_temperature);
  c.max_tokens = j.value("max_tokens", c.max_tokens);
  c.prompt_template = j.value("prompt_template", c.prompt_template);
  c.response_pointer = j.value("response_pointer", c.response_pointer);
  c.request_timeout_s = j.value("timeout_s", c.request_timeout_s);
  c.max_attempts = j.value("max_attempts", c.max_attempts);
  c.initial_backoff = std::chrono::milliseconds(j.value("backoff_ms", static_cast<int>(c.initial_backoff.count())));
  const auto compare = j.value("compare", std::string("exact"));
  if (compare == "exact") {
    c.compare = CompareMode::Exact;
  } else if (compare == "containment") {
    c.compare = CompareMode::Containment;
  } else {
    throw Error(ErrorKind::Malformed, "oracle config: compare must be \"exact\" or \"containment\"");
  }
  c.validate();
  return c;
}

/// Oracle config: {"kind": "synthetic", "world": path, "self_teaching": bool}
/// or {"kind": "llm", "base_url": ..., ...}. Relative paths resolve against
/// the config file's directory.
LoadedOracle load_oracle(const fs::path& config_path, std::shared_ptr<const Corpus> corpus,
                         const std::string& cache_path, std::ostream& err) {
  LoadedOracle loaded;
  loaded.config_text = read_file(config_path);
  json j;
  try {
    j = json::parse(loaded.config_text);
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "synthetic") {
      fs::path world_path = j.at("world").get<std::string>();
      if (world_path.is_relative()) world_path = config_path.parent_path() / world_path;
      SyntheticOptions options;
      options.self_teaching = j.value("self_teaching", true);
      loaded.oracle = std::make_shared<SyntheticOracle>(load_world(world_path), corpus, options);
    } else if (kind == "llm") {
      loaded.oracle = std::make_shared<LlmOracle>(llm_config(j), corpus);
    } else {
      throw Error(ErrorKind::Malformed, "oracle config: unknown kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Malformed, std::string("oracle config: ") + e.what());
  }
  if (!cache_path.empty()) {
    auto c = std::make_shared<CachedOracle>(loaded.oracle, cache_path,
                                            [&err](std::string_view msg) { err << "warning: " << msg << '\n'; });
    loaded.cache = c;
    loaded.oracle = c;
  }
  return loaded;
}

Digest config_digest(const std::string& command, const std::vector<std::string>& args,
                     const std::vector<fs::path>& inputs, const std::string& oracle_text) {
  Hasher h;
  h.field(command);
  h.field(static_cast<std::uint64_t>(args.size()));
  for (const auto& a : args) h.field(a);
  for (const auto& p : inputs) h.field(sha256(read_file(p)));
  h.field(oracle_text);
  return h.finish();
}

void write_manifest(const fs::path& path, RunManifest manifest) {
  manifest.ended = std::chrono::system_clock::now();
  write_file_atomic(path, manifest_json(manifest));
}

std::string sidecar(const fs::path& out, const std::string& suffix) { return out.string() + suffix; }

std::vector<std::string> strings(const std::vector<fs::path>& paths) {
  std::vector<std::string> s;
  for (const auto& p : paths) s.push_back(p.string());
  return s;
}

EmbedderPtr make_embedder(const std::string& table_path, const std::string& cache_path,
                          std::shared_ptr<CachingEmbedder>& caching) {
  EmbedderPtr base = std::make_shared<TrigramEmbedder>();
  if (!table_path.empty()) {
    std::istringstream in(read_file(table_path));
    std::shared_ptr<TableEmbedder> table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        const auto row = json::parse(line);
        auto values = row.at("vector").get<std::vector<double>>();
        if (!table) table = std::make_shared<TableEmbedder>(values.size(), values.size() == base->dim() ? base : nullptr);
        table->set(row.at("text").get<std::string>(), std::move(values));
      } catch (const json::exception& e) {
        throw Error(ErrorKind::Malformed, table_path + " line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (!table) throw Error(ErrorKind::Malformed, table_path + " holds no embeddings");
    base = table;
  }
  if (!cache_path.empty()) {
    caching = std::make_shared<CachingEmbedder>(base);
    if (fs::exists(cache_path)) caching->load(cache_path);
    return caching;
  }
  return base;
}

MmrVariant mmr_variant(bool literal) { return literal ? MmrVariant::Literal : MmrVariant::Standard; }

// ---------------------------------------------------------------------------

struct PreselectArgs {
  std::string train, oracle, algorithm = "approx", out, cache;
  int rounds = 1, runs = 1;
  std::uint64_t seed = 0;
  bool shuffle = false;
  unsigned jobs = default_jobs();
};

int cmd_preselect(const PreselectArgs& a, const std::vector<std::string>& argv, std::ostream& out,
                  std::ostream& err) {
  RunManifest manifest;
  manifest.command = "preselect";
  manifest.started = std::chrono::system_clock::now();
  manifest.seed = a.seed;

  const auto train = std::make_shared<const Corpus>(load_corpus(a.train));
  auto loaded = load_oracle(a.oracle, train, a.cache, err);
  const auto start = Clock::now();

  ReductionReport report;
  std::string trace;
  DemoSet feeder;
  if (a.algorithm == "approx") {
    TreeConfig config{a.rounds, a.runs, a.seed, a.shuffle, a.jobs};
    const auto result = approx_feeder(*loaded.oracle, *train, config);
    report = reduction_report(result, seconds_since(start));
    trace = trace_json(result);
    feeder = result.feeder;
  } else if (a.algorithm == "exact-maintain" || a.algorithm == "exact-iterative") {
    ExactOptions options;
    options.jobs = a.jobs;
    const auto result = a.algorithm == "exact-maintain" ? exact_feeder_maintain(*loaded.oracle, *train, options)
                                                        : exact_feeder_iterative(*loaded.oracle, *train, options);
    report = reduction_report(result, train->size(), seconds_since(start));
    trace = trace_json(result.trace);
    feeder = result.feeder;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown algorithm '" + a.algorithm + "'");
  }

  const fs::path out_path = a.out;
  const std::vector<fs::path> outputs{out_path, sidecar(out_path, ".report.json"), sidecar(out_path, ".trace.json"),
                                      sidecar(out_path, ".manifest.json")};
  write_file_atomic(outputs[0], corpus_to_jsonl(train->subset(feeder)));
  write_file_atomic(outputs[1], report_json(report));
  write_file_atomic(outputs[2], trace);
  manifest.config_digest = config_digest("preselect", argv, {a.train}, loaded.config_text);
  manifest.input_paths = {a.train, a.oracle};
  manifest.output_paths = strings(outputs);
  write_manifest(outputs[3], manifest);

  ordered_json summary;
  summary["output"] = out_path.string();
  summary["algorithm"] = report.algorithm;
  summary["input_size"] = report.input_size;
  summary["output_size"] = report.output_size;
  summary["reduction_ratio"] = report.reduction_ratio;
  summary["oracle_calls"] = report.oracle_calls;
  summary["delegated_calls"] = loaded.delegated(report.oracle_calls);
  out << summary.dump() << '\n';
  return 0;
}

struct SelectArgs {
  std::string pool, query, selector = "similarity", format = "ids", embeddings, embedding_cache, oracle, cache;
  std::size_t n = 1;
  double eta = 1.0;
  std::uint64_t seed = 0;
  bool literal_mmr = false, filter = false;
  unsigned jobs = default_jobs();
};

int cmd_select(const SelectArgs& a, std::ostream& out, std::ostream& err) {
  const auto pool = std::make_shared<const Corpus>(load_corpus(a.pool));
  if (pool->empty()) throw Error(ErrorKind::EmptyPool, "selection pool " + a.pool + " is empty");
  std::shared_ptr<CachingEmbedder> caching;
  const auto embedder = make_embedder(a.embeddings, a.embedding_cache, caching);
  const Selector selector(parse_selector_kind(a.selector), embedder, a.eta, a.seed, mmr_variant(a.literal_mmr),
                          a.jobs);

  std::vector<Demonstration> chosen;
  bool exhausted = false;
  if (a.filter) {
    if (a.oracle.empty()) throw Error(ErrorKind::InvalidArgument, "--filter needs --oracle");
    auto loaded = load_oracle(a.oracle, pool, a.cache, err);
    auto filtered = post_retrieval_filter(*loaded.oracle, selector, pool->ids(), a.query, a.n, a.jobs);
    chosen = std::move(filtered.selected);
    exhausted = filtered.pool_exhausted;
    if (filtered.precondition_unmet) err << "warning: filter skipped; selection is not self-consistent\n";
  } else {
    chosen = selector.select(pool->demos(), a.query, a.n);
    exhausted = chosen.size() < a.n;
  }
  if (exhausted) err << "warning: pool exhausted; " << chosen.size() << " of " << a.n << " selected\n";
  if (caching) caching->save(a.embedding_cache);

  if (a.format == "ids") {
    for (const auto& d : chosen) out << d.id.str() << '\n';
  } else if (a.format == "prompt") {
    std::vector<DemoId> ids;
    for (const auto& d : chosen) ids.push_back(d.id);
    out << render_prompt(*pool, DemoSet::from_ids(std::move(ids)), a.query);
    out << '\n';
  } else {
    throw Error(ErrorKind::InvalidArgument, "--out must be ids or prompt");
  }
  return 0;
}

struct EvalArgs {
  std::string pool, test, oracle, selector = "similarity", cache, embeddings;
  std::size_t n = 1;
  double eta = 1.0;
  std::vector<std::uint64_t> seeds;
  bool literal_mmr = false;
  unsigned jobs = default_jobs();
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const Corpus pool = load_corpus(a.pool);
  const Corpus test = load_corpus(a.test);
  if (pool.empty()) throw Error(ErrorKind::EmptyPool, "selection pool " + a.pool + " is empty");
  if (test.empty()) throw Error(ErrorKind::InvalidArgument, "test set " + a.test + " is empty");
  const auto combined = std::make_shared<const Corpus>(pool.merged(test));
  auto loaded = load_oracle(a.oracle, combined, a.cache, err);
  std::shared_ptr<CachingEmbedder> caching;
  const auto embedder = make_embedder(a.embeddings, "", caching);

  const std::vector<std::uint64_t> seeds = a.seeds.empty() ? std::vector<std::uint64_t>{0} : a.seeds;
  ordered_json rows = ordered_json::array();
  double sum = 0.0;
  std::vector<double> accs;
  for (auto seed : seeds) {
    const Selector selector(parse_selector_kind(a.selector), embedder, a.eta, seed, mmr_variant(a.literal_mmr),
                            a.jobs);
    const double acc = icl_accuracy(*loaded.oracle, pool.ids(), selector, a.n, test, a.jobs);
    accs.push_back(acc);
    sum += acc;
    rows.push_back(ordered_json{{"seed", seed}, {"accuracy", acc}});
  }
  const double mean = sum / static_cast<double>(accs.size());
  double var = 0.0;
  for (double x : accs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(accs.size());

  ordered_json result;
  result["accuracy"] = mean;
  if (a.seeds.size() > 1) {
    result["rows"] = rows;
    result["mean"] = mean;
    result["variance"] = var;
  }
  out << result.dump() << '\n';
  return 0;
}

struct UpdateArgs {
  std::string feeder, added, oracle, out, cache;
  std::vector<std::string> removed;
  int rounds = 1, runs = 1;
  unsigned jobs = default_jobs();
};

int cmd_update(const UpdateArgs& a, const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunManifest manifest;
  manifest.command = "update";
  manifest.started = std::chrono::system_clock::now();

  const Corpus existing = load_corpus(a.feeder);
  const Corpus added = a.added.empty() ? Corpus{} : load_corpus(a.added);
  const auto combined = std::make_shared<const Corpus>(existing.merged(added));
  std::vector<DemoId> removed_ids;
  for (const auto& r : a.removed) removed_ids.push_back(DemoId(r));
  const DemoSet removed = DemoSet::from_ids(removed_ids);
  for (const auto& id : removed) {
    if (!existing.contains(id)) throw Error(ErrorKind::UnknownId, "cannot remove '" + id.str() + "': not in the feeder");
  }

  auto loaded = load_oracle(a.oracle, combined, a.cache, err);
  const auto start = Clock::now();
  TreeConfig config{a.rounds, a.runs, 0, false, a.jobs};
  const auto result = incremental_update(loaded.oracle, existing.ids(), added, removed, config);

  std::vector<Demonstration> records;
  for (const auto& d : existing) {
    if (result.feeder.contains(d.id)) records.push_back(d);
  }
  for (const auto& d : added) {
    if (result.added.contains(d.id)) records.push_back(d);
  }
  ReductionReport report;
  report.algorithm = "incremental";
  report.input_size = result.base.size() + added.size();
  report.output_size = result.feeder.size();
  report.reduction_ratio =
      report.input_size == 0 ? 0.0 : 1.0 - static_cast<double>(report.output_size) / static_cast<double>(report.input_size);
  report.oracle_calls = result.oracle_calls;
  report.sufficiency_checks = result.approx ? result.approx->sufficiency_checks : 0;
  report.wall_time_s = seconds_since(start);

  const fs::path out_path = a.out;
  const std::vector<fs::path> outputs{out_path, sidecar(out_path, ".report.json"), sidecar(out_path, ".manifest.json")};
  write_file_atomic(outputs[0], corpus_to_jsonl(Corpus(std::move(records))));
  write_file_atomic(outputs[1], report_json(report));
  std::vector<fs::path> inputs{a.feeder};
  if (!a.added.empty()) inputs.push_back(a.added);
  manifest.config_digest = config_digest("update", argv, inputs, loaded.config_text);
  manifest.input_paths = strings(inputs);
  manifest.input_paths.push_back(a.oracle);
  manifest.output_paths = strings(outputs);
  write_manifest(outputs[2], manifest);

  ordered_json summary;
  summary["output"] = out_path.string();
  summary["base_size"] = result.base.size();
  summary["added_kept"] = result.added.size();
  summary["output_size"] = result.feeder.size();
  summary["oracle_calls"] = result.oracle_calls;
  out << summary.dump() << '\n';
  return 0;
}

int cmd_stats(const std::string& space_path, std::ostream& out) {
  const auto space = read_trial_space_json(read_file(space_path));
  const auto r = ps_pn_pns(space);
  ordered_json j;
  j["ps"] = r.ps;
  j["pn"] = r.pn;
  j["pns"] = r.pns;
  j["residual"] = r.residual;
  out << j.dump() << '\n';
  return 0;
}

struct BilevelArgs {
  std::string train, oracle, out, checkpoint_dir, tune = "absorb", test, selector = "similarity";
  int iterations = 1, rounds = 1, runs = 1;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  unsigned jobs = default_jobs();
};

int cmd_bilevel(const BilevelArgs& a, const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunManifest manifest;
  manifest.command = "bilevel";
  manifest.started = std::chrono::system_clock::now();
  manifest.seed = a.seed;

  const Corpus train = load_corpus(a.train);
  const Corpus test = a.test.empty() ? Corpus{} : load_corpus(a.test);
  const auto combined = std::make_shared<const Corpus>(train.merged(test));
  auto loaded = load_oracle(a.oracle, combined, "", err);

  TuneHook hook;
  if (a.tune == "absorb") {
    hook = absorb_tune();
  } else if (a.tune == "identity") {
    hook = identity_tune();
  } else {
    throw Error(ErrorKind::InvalidArgument, "--tune must be absorb or identity");
  }
  std::optional<Selector> selector;
  std::optional<AccuracyProbe> probe;
  if (!test.empty()) {
    selector.emplace(parse_selector_kind(a.selector), std::make_shared<TrigramEmbedder>(), 1.0, a.seed,
                     MmrVariant::Standard, a.jobs);
    probe = AccuracyProbe{&test, &*selector, a.n};
  }

  std::vector<fs::path> outputs;
  std::vector<ReductionReport> reports;
  auto on_iteration = [&](const IterationRecord& rec) {
    reports.push_back(rec.report);
    if (a.checkpoint_dir.empty()) return;
    const fs::path p = fs::path(a.checkpoint_dir) / ("iteration_" + std::to_string(rec.iteration) + ".json");
    write_file_atomic(p, checkpoint_json(rec));
    outputs.push_back(p);
  };
  TreeConfig config{a.rounds, a.runs, a.seed, false, a.jobs};
  const auto state = bilevel(loaded.oracle, train, a.iterations, hook, config, probe, on_iteration);

  const fs::path out_path = a.out;
  write_file_atomic(out_path, corpus_to_jsonl(train.subset(state.feeder)));
  write_file_atomic(sidecar(out_path, ".history.csv"), report_csv(reports));
  outputs.insert(outputs.begin(), {out_path, sidecar(out_path, ".history.csv")});
  const fs::path manifest_path = sidecar(out_path, ".manifest.json");
  outputs.push_back(manifest_path);
  std::vector<fs::path> inputs{a.train};
  if (!a.test.empty()) inputs.push_back(a.test);
  manifest.config_digest = config_digest("bilevel", argv, inputs, loaded.config_text);
  manifest.input_paths = strings(inputs);
  manifest.input_paths.push_back(a.oracle);
  manifest.output_paths = strings(outputs);
  write_manifest(manifest_path, manifest);

  ordered_json history = ordered_json::array();
  for (const auto& rec : state.history) {
    ordered_json h;
    h["iteration"] = rec.iteration;
    h["feeder_size"] = rec.feeder.size();
    h["oracle_fingerprint"] = rec.tuned_fingerprint.hex();
    if (rec.accuracy) h["accuracy"] = *rec.accuracy;
    history.push_back(h);
  }
  out << ordered_json{{"output", out_path.string()}, {"history", history}}.dump() << '\n';
  return 0;
}

void report_error(std::ostream& err, std::string_view kind, std::string_view message) {
  ordered_json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  err << j.dump() << '\n';
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InputNotFound: return 2;
    case ErrorKind::PreconditionUnmet: return 3;
    case ErrorKind::EmptyPool: return 4;
    case ErrorKind::UnknownId: return 5;
    case ErrorKind::Malformed:
    case ErrorKind::ConditionUndefined: return 6;
    default: return 1;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pre-select sufficient and necessary demonstration subsets", "feeder"};
  app.require_subcommand(1);

  PreselectArgs pre;
  auto* preselect = app.add_subcommand("preselect", "Reduce a training corpus to a FEEDER subset");
  preselect->add_option("--train", pre.train, "Training corpus JSONL")->required();
  preselect->add_option("--oracle", pre.oracle, "Oracle config JSON")->required();
  preselect->add_option("--algorithm", pre.algorithm)
      ->check(CLI::IsMember({"approx", "exact-maintain", "exact-iterative"}));
  preselect->add_option("-K,--rounds", pre.rounds)->check(CLI::PositiveNumber);
  preselect->add_option("-R,--runs", pre.runs)->check(CLI::PositiveNumber);
  preselect->add_option("--seed", pre.seed, "Pairing seed");
  preselect->add_flag("--shuffle", pre.shuffle, "Shuffle nodes before pairing");
  preselect->add_option("--cache", pre.cache, "Verdict cache JSONL");
  preselect->add_option("--jobs", pre.jobs)->check(CLI::PositiveNumber);
  preselect->add_option("--out", pre.out, "Output FEEDER JSONL")->required();

  SelectArgs sel;
  auto* select = app.add_subcommand("select", "Pick demonstrations for one query");
  select->add_option("--pool", sel.pool)->required();
  select->add_option("--query", sel.query)->required();
  select->add_option("--selector", sel.selector)->check(CLI::IsMember({"random", "similarity", "diversity"}));
  select->add_option("-n,--shots", sel.n)->check(CLI::PositiveNumber);
  select->add_option("--eta", sel.eta);
  select->add_option("--seed", sel.seed);
  select->add_option("--out", sel.format, "ids or prompt")->check(CLI::IsMember({"ids", "prompt"}));
  select->add_option("--embeddings", sel.embeddings, "JSONL of {text, vector} rows");
  select->add_option("--embedding-cache", sel.embedding_cache, "Binary embedding cache");
  select->add_flag("--mmr-literal", sel.literal_mmr, "Penalize by query-to-selected similarity");
  select->add_flag("--filter", sel.filter, "Prune the selection once and refill");
  select->add_option("--oracle", sel.oracle);
  select->add_option("--cache", sel.cache);
  select->add_option("--jobs", sel.jobs)->check(CLI::PositiveNumber);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "ICL accuracy of a pool on a test set");
  eval->add_option("--pool", ev.pool)->required();
  eval->add_option("--test", ev.test)->required();
  eval->add_option("--oracle", ev.oracle)->required();
  eval->add_option("--selector", ev.selector)->check(CLI::IsMember({"random", "similarity", "diversity"}));
  eval->add_option("-n,--shots", ev.n)->check(CLI::PositiveNumber);
  eval->add_option("--eta", ev.eta);
  eval->add_option("--seed", ev.seeds, "One or more seeds")->delimiter(',');
  eval->add_option("--embeddings", ev.embeddings);
  eval->add_flag("--mmr-literal", ev.literal_mmr);
  eval->add_option("--cache", ev.cache);
  eval->add_option("--jobs", ev.jobs)->check(CLI::PositiveNumber);

  UpdateArgs up;
  auto* update = app.add_subcommand("update", "Fold added and removed demonstrations into a FEEDER");
  update->add_option("--feeder", up.feeder)->required();
  update->add_option("--added", up.added);
  update->add_option("--remove", up.removed)->delimiter(',');
  update->add_option("--oracle", up.oracle)->required();
  update->add_option("-K,--rounds", up.rounds)->check(CLI::PositiveNumber);
  update->add_option("-R,--runs", up.runs)->check(CLI::PositiveNumber);
  update->add_option("--cache", up.cache);
  update->add_option("--jobs", up.jobs)->check(CLI::PositiveNumber);
  update->add_option("--out", up.out)->required();

  std::string space;
  auto* stats = app.add_subcommand("stats", "PS, PN and PNS of a trial space");
  stats->add_option("--space", space)->required();

  BilevelArgs bi;
  auto* bil = app.add_subcommand("bilevel", "Alternate pre-selection and tuning");
  bil->add_option("--train", bi.train)->required();
  bil->add_option("--oracle", bi.oracle)->required();
  bil->add_option("--iterations", bi.iterations)->required()->check(CLI::PositiveNumber);
  bil->add_option("--tune", bi.tune)->check(CLI::IsMember({"absorb", "identity"}));
  bil->add_option("-K,--rounds", bi.rounds)->check(CLI::PositiveNumber);
  bil->add_option("-R,--runs", bi.runs)->check(CLI::PositiveNumber);
  bil->add_option("--test", bi.test);
  bil->add_option("--selector", bi.selector)->check(CLI::IsMember({"random", "similarity", "diversity"}));
  bil->add_option("-n,--shots", bi.n)->check(CLI::PositiveNumber);
  bil->add_option("--seed", bi.seed);
  bil->add_option("--checkpoint-dir", bi.checkpoint_dir);
  bil->add_option("--jobs", bi.jobs)->check(CLI::PositiveNumber);
  bil->add_option("--out", bi.out)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "Usage", e.what());
    return 1;
  }

  try {
    if (*preselect) return cmd_preselect(pre, args, out, err);
    if (*select) return cmd_select(sel, out, err);
    if (*eval) return cmd_eval(ev, out, err);
    if (*update) return cmd_update(up, args, out, err);
    if (*stats) return cmd_stats(space, out);
    if (*bil) return cmd_bilevel(bi, args, out, err);
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "Internal", e.what());
    return 1;
  }
  return 1;
}

}  // namespace feeder::cli
