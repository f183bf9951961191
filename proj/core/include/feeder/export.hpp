#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "feeder/analysis.hpp"
#include "feeder/pipeline.hpp"

namespace feeder {

std::string trace_json(const ApproxResult& result);
std::string trace_json(const NecessityTrace& trace);

std::string report_json(const ReductionReport& report);
/// Header plus one row per report.
std::string report_csv(const std::vector<ReductionReport>& reports);

/// {iteration, feeder_ids, oracle_fingerprint, report, accuracy?}
std::string checkpoint_json(const IterationRecord& record);

struct RunManifest {
  std::string command;
  Digest config_digest;
  std::vector<std::string> input_paths;
  std::vector<std::string> output_paths;
  std::uint64_t seed = 0;
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point ended;
};

std::string manifest_json(const RunManifest& manifest);
/// UTC, second resolution: 2024-01-31T12:00:00Z
std::string iso8601(std::chrono::system_clock::time_point t);

}  // namespace feeder
