#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dssi::tools {

struct OracleCheck {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed() const { return worst < tolerance; }
};

struct OracleSuiteResult {
  std::size_t trials = 0;
  std::vector<OracleCheck> checks;
  bool passed() const;
};

/// Compares the fast paths against the dense oracle on random 6x6 and 8x8
/// systems: fidelity solve vs dense ridge, frequency forward vs dense Phi, and
/// ADMM with the quadratic prior vs the dense Tikhonov solution.
/// `conjugate_operator` deliberately corrupts the operator to prove the suite
/// can fail.
OracleSuiteResult run_oracle_suite(std::uint64_t seed, std::size_t trials, bool conjugate_operator = false);

}  // namespace dssi::tools
