#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "format.hpp"

namespace scalerel::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  Json metrics;
};

/// The invariant/residual suites behind `scalerel check`. Random cases are
/// drawn from std::mt19937_64 seeded with `seed`.
std::vector<CheckResult> run_checks(std::uint64_t seed);

}  // namespace scalerel::cli
