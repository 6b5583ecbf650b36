#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace odd::verify {

struct Config {
  int dim = 1;
  int half_width = 32;
  std::size_t count = 8;
  std::uint64_t seed = 1;
  /// Random t values per matrix for the group-action suites.
  int t_samples = 8;
  /// Bound C for the empirically calibrated constant intervals [1/C, C].
  double constant_bound = 20.0;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  /// Measured quantities: residuals, constant intervals, counts.
  nlohmann::json metrics = nlohmann::json::object();
  /// Replayable description of the first failing case (matrix JSON plus parameters).
  nlohmann::json failure;
};

/// Names accepted by run_suite, in run order.
const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown suite or an empty corpus.
SuiteResult run_suite(const std::string& name, const Config& config);

}  // namespace odd::verify
