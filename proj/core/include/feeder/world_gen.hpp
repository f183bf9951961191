#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>

#include "feeder/random.hpp"
#include "feeder/synthetic_oracle.hpp"

namespace feeder {

/// Shape of a randomly generated fact-coverage world.
struct WorldParams {
  std::size_t n_demos = 8;
  std::size_t n_facts = 8;
  std::size_t max_teach = 2;   // facts taught per ordinary demo, drawn in [1, max_teach]
  std::size_t max_extra = 1;   // extra required facts beyond the taught ones, in [0, max_extra]
  double base_fraction = 0.2;  // chance a fact is known without any context
  /// Share of demos whose facts are all base knowledge (answerable zero-shot,
  /// so redundant for any context).
  double redundant_fraction = 0.0;
  /// Emit each demo twice in a row, same text and facts, distinct ids.
  bool duplicate_all = false;
  std::size_t n_test = 0;
};

struct GeneratedWorld {
  Corpus train;
  Corpus test;
  SyntheticWorld world;
  std::shared_ptr<const SyntheticOracle> oracle;  // bound to train ∪ test
  std::size_t redundant_count = 0;
};

/// Generated worlds are grounded (teaches ⊆ requirements), so set sufficiency
/// is transitive and the synthetic oracle is context-monotone.
GeneratedWorld random_world(std::mt19937_64& rng, const WorldParams& params, SyntheticOptions options = {});

}  // namespace feeder
