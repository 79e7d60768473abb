#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optuple/classify.hpp"
#include "optuple/tolerance.hpp"

namespace optuple {

struct SuiteResult {
  std::string suite;
  int trials = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::vector<ConjectureCandidate> candidates;  // conjecture suite only

  bool passed() const { return failures.empty(); }
};

/// Known suites: hierarchy, charact, theta-laws, power-root, koszul-oracle,
/// extension, hardy-model, kernel-inclusion, conjecture.
std::vector<std::string> suite_names();

/// Runs the named seeded suite. Throws std::invalid_argument for an
/// unknown name. The conjecture suite never fails; candidates are
/// reported for manual audit.
SuiteResult run_suite(const std::string& name, int trials, std::uint64_t seed,
                      const Tolerance& tol = {}, int nthreads = 1);

}  // namespace optuple
