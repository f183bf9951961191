#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace feeder {

/// Rounds and runs of the sufficiency tournament. Identical config and oracle
/// give identical output.
struct TreeConfig {
  int rounds = 1;  // K
  int runs = 1;    // R
  std::uint64_t pairing_seed = 0;
  bool shuffle_pairs = false;
  unsigned jobs = 1;  // concurrent oracle fan-out; never changes results

  void validate() const;
};

enum class SelectorKind { Random, Similarity, Diversity };

std::string_view to_string(SelectorKind kind);
SelectorKind parse_selector_kind(std::string_view name);

struct SelectionRequest {
  std::string query;
  int n_shots = 1;
  SelectorKind selector = SelectorKind::Similarity;
  double eta = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

}  // namespace feeder
