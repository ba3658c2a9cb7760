#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sofic::cli {

/// Runs the command line tool; args excludes the program name. Returns the exit code:
/// 0 success, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ReproduceOptions {
  long k_lo = -50;
  long k_hi = 50;
  std::uint64_t seed = 1;
};

/// Runs one stored scenario and compares it against its expectations.
/// Returns 0 on match, 1 on mismatch, 2 for an unknown target.
int reproduce(const std::string& target, const ReproduceOptions& options, std::ostream& out,
              std::ostream& err);

std::vector<std::string> reproduce_targets();

}  // namespace sofic::cli
