#include "feeder/errors.hpp"

namespace feeder {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotInCorpus: return "NotInCorpus";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::InvalidDemonstration: return "InvalidDemonstration";
    case ErrorKind::OracleUnavailable: return "OracleUnavailable";
    case ErrorKind::UnsupportedTune: return "UnsupportedTune";
    case ErrorKind::StatusMismatch: return "StatusMismatch";
    case ErrorKind::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case ErrorKind::NodesNotDisjoint: return "NodesNotDisjoint";
    case ErrorKind::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorKind::EmptyPool: return "EmptyPool";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::ConditionUndefined: return "ConditionUndefined";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InputNotFound: return "InputNotFound";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace feeder
