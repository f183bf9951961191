#include "feeder/config.hpp"

#include "feeder/errors.hpp"

namespace feeder {

void TreeConfig::validate() const {
  if (rounds < 1) throw Error(ErrorKind::InvalidArgument, "rounds (K) must be >= 1");
  if (runs < 1) throw Error(ErrorKind::InvalidArgument, "runs (R) must be >= 1");
}

std::string_view to_string(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::Random: return "random";
    case SelectorKind::Similarity: return "similarity";
    case SelectorKind::Diversity: return "diversity";
  }
  return "unknown";
}

SelectorKind parse_selector_kind(std::string_view name) {
  if (name == "random") return SelectorKind::Random;
  if (name == "similarity") return SelectorKind::Similarity;
  if (name == "diversity") return SelectorKind::Diversity;
  throw Error(ErrorKind::InvalidArgument, "unknown selector '" + std::string(name) + "'");
}

void SelectionRequest::validate() const {
  if (n_shots < 1) throw Error(ErrorKind::InvalidArgument, "n_shots must be >= 1");
}

}  // namespace feeder
