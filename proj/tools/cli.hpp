#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "padic_tate/harness.hpp"

namespace padic_tate::cli {

/// Exit statuses of the command-line tool.
enum Status : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2, kPrecisionError = 3 };

/// Runs `padic-tate args...` (args excludes the program name), writing
/// records to out and diagnostics to err. Reads PADIC_TATE_SEED.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One harness assertion as a single-line JSON record with stable key order.
std::string assertion_record(const Assertion& a);

}  // namespace padic_tate::cli
