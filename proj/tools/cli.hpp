#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <feeder/errors.hpp>

namespace feeder::cli {

/// Runs one command line (program name excluded). Normal output goes to
/// `out`; errors are written to `err` as a single JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 2 InputNotFound, 3 PreconditionUnmet, 4 EmptyPool, 5 UnknownId,
/// 6 Malformed or ConditionUndefined, 1 otherwise.
int exit_code(ErrorKind kind);

}  // namespace feeder::cli
