#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aztec {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> details;
};

struct VerifyOptions {
  std::uint64_t seed = 20261019;
  // Zero keeps each suite's default.
  std::uint64_t samples = 0;
  int replicas = 0;
};

// counts, uniformity, ring, pushforward, equivalence, profile, circle, ode.
const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options = {});

}  // namespace aztec
