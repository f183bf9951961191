#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace feeder {

/// Uniform integer in [0, bound) by rejection; identical across standard libraries.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

/// Seeded Fisher-Yates permutation of [0, n).
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

/// splitmix64 finaliser, for deriving independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace feeder
