#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace feeder {

enum class ErrorKind {
  NotInCorpus,
  DuplicateId,
  InvalidDemonstration,
  OracleUnavailable,
  UnsupportedTune,
  StatusMismatch,
  TooLargeForExhaustive,
  NodesNotDisjoint,
  PreconditionUnmet,
  EmptyPool,
  EmptyInput,
  ConditionUndefined,
  TooLarge,
  InputNotFound,
  UnknownId,
  Malformed,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace feeder
