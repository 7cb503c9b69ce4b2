#pragma once

// Verification suites: each checks one theorem-level property on seeded
// random or curated instances and reports every case.

#include <cstdint>
#include <string>
#include <vector>

namespace hle {

struct CaseResult {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  int criterion = 0;
  std::string description;
  std::vector<CaseResult> cases;
  bool pass() const;
  std::size_t passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  int depth = 3;
  unsigned threads = 1;
};

/// Suite names in criterion order (1..12); "all" runs every one of them.
const std::vector<std::string>& suite_names();

/// Throws UnknownBinding for an unknown suite name.
std::vector<SuiteResult> run_verify(const std::string& suite, const VerifyOptions& opt);

/// HOLIM_ENGINE_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned default_thread_count();

}  // namespace hle
