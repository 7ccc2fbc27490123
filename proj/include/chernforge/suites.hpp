#pragma once

// Property suites over seeded instances. Each case either passes or yields a
// counterexample description; exceptions raised inside a case count as failures.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chernforge {

struct SuiteOptions {
  std::uint64_t seed = 42;
  int cases = 100;
  /// Truncation degree for the polynomial suites (newton, multiplicativity).
  int degree = 8;
};

struct Counterexample {
  int index = 0;
  std::string instance;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int cases = 0;
  int passed = 0;
  int failed = 0;
  std::optional<Counterexample> first_failure;

  bool ok() const { return failed == 0; }
};

/// newton, multiplicativity, whitney, diagram, paths, gauge, odd, naturality, calculus.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Throws PreconditionError for an unknown suite name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace chernforge
