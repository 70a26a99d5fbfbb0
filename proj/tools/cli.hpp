#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dssi::tools {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitIo = 3,
  kExitOracleBreach = 4,
};

/// Runs one `dssi` command line (argv[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::uint64_t fnv1a64(const std::vector<unsigned char>& bytes);

}  // namespace dssi::tools
