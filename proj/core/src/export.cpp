#include "feeder/export.hpp"

#include <ctime>
#include <sstream>

#include <json.hpp>

namespace feeder {

using nlohmann::ordered_json;

namespace {

ordered_json ids(const DemoSet& set) {
  ordered_json a = ordered_json::array();
  for (const auto& id : set) a.push_back(id.str());
  return a;
}

ordered_json report_object(const ReductionReport& r) {
  ordered_json j;
  j["algorithm"] = r.algorithm;
  j["input_size"] = r.input_size;
  j["output_size"] = r.output_size;
  j["reduction_ratio"] = r.reduction_ratio;
  j["oracle_calls"] = r.oracle_calls;
  j["sufficiency_checks"] = r.sufficiency_checks;
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

}  // namespace

std::string trace_json(const ApproxResult& result) {
  ordered_json j;
  j["algorithm"] = "approx";
  j["input_size"] = result.input_size;
  j["output"] = ids(result.feeder);
  j["oracle_calls"] = result.oracle_calls;
  j["sufficiency_checks"] = result.sufficiency_checks;
  j["runs"] = ordered_json::array();
  for (const auto& run : result.runs) {
    ordered_json r;
    r["run"] = run.run_index;
    r["input_size"] = run.input_size;
    r["output_size"] = run.output_size;
    r["rounds_executed"] = run.rounds_executed;
    r["early_stop"] = run.early_stop;
    j["runs"].push_back(r);
  }
  j["rounds"] = ordered_json::array();
  for (const auto& round : result.rounds) {
    ordered_json r;
    r["run"] = round.run_index;
    r["round"] = round.round_index;
    r["pairs"] = ordered_json::array();
    for (const auto& p : round.pairs) {
      ordered_json o;
      o["left"] = ids(p.left);
      o["right"] = ids(p.right);
      o["case"] = std::string(to_string(p.kind));
      o["survivor"] = ids(p.survivor);
      r["pairs"].push_back(o);
    }
    r["carried"] = round.carried ? ids(*round.carried) : ordered_json(nullptr);
    r["survivors"] = ordered_json::array();
    for (const auto& s : round.survivors) r["survivors"].push_back(ids(s));
    r["oracle_calls"] = round.oracle_calls;
    r["sufficiency_checks"] = round.sufficiency_checks;
    j["rounds"].push_back(r);
  }
  return j.dump(2) + "\n";
}

std::string trace_json(const NecessityTrace& trace) {
  ordered_json j;
  j["algorithm"] = trace.algorithm;
  j["initial"] = ordered_json::array();
  for (const auto& h : trace.initial) j["initial"].push_back(ids(h));
  j["rounds"] = ordered_json::array();
  for (const auto& round : trace.rounds) {
    ordered_json r;
    r["outer_round"] = round.outer_round;
    r["checked"] = ordered_json::array();
    for (const auto& [a, b] : round.checked) r["checked"].push_back(ordered_json::array({ids(a), ids(b)}));
    r["merged"] = ordered_json::array();
    for (const auto& m : round.merged) r["merged"].push_back(ids(m));
    r["kept_max"] = ids(round.kept_max);
    j["rounds"].push_back(r);
  }
  j["removed_total"] = ids(trace.removed_total);
  j["oracle_calls"] = trace.oracle_calls;
  j["fell_back"] = trace.fell_back;
  return j.dump(2) + "\n";
}

std::string report_json(const ReductionReport& report) { return report_object(report).dump(2) + "\n"; }

std::string report_csv(const std::vector<ReductionReport>& reports) {
  std::ostringstream out;
  out.precision(17);
  out << "input_size,output_size,reduction_ratio,oracle_calls,wall_time_s\n";
  for (const auto& r : reports) {
    out << r.input_size << ',' << r.output_size << ',' << r.reduction_ratio << ',' << r.oracle_calls << ','
        << r.wall_time_s << '\n';
  }
  return out.str();
}

std::string checkpoint_json(const IterationRecord& record) {
  ordered_json j;
  j["iteration"] = record.iteration;
  j["feeder_ids"] = ids(record.feeder);
  j["oracle_fingerprint"] = record.tuned_fingerprint.hex();
  j["selection_fingerprint"] = record.selection_fingerprint.hex();
  j["report"] = report_object(record.report);
  if (record.accuracy) j["accuracy"] = *record.accuracy;
  return j.dump(2) + "\n";
}

std::string iso8601(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  j["config_digest"] = m.config_digest.hex();
  j["input_paths"] = m.input_paths;
  j["output_paths"] = m.output_paths;
  j["seed"] = m.seed;
  j["started"] = iso8601(m.started);
  j["ended"] = iso8601(m.ended);
  return j.dump(2) + "\n";
}

}  // namespace feeder
