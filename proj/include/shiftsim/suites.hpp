#ifndef SHIFTSIM_SUITES_HPP
#define SHIFTSIM_SUITES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "shiftsim/houghton.hpp"

namespace shiftsim {

struct SuiteResult {
  std::string name;
  Int passed = 0;
  Int total = 0;
  std::string failure;  // empty when everything passed
  bool ok() const { return failure.empty() && passed == total; }
};

using SuiteFn = std::function<SuiteResult(std::uint64_t seed, Int samples)>;

// Named randomized identity suites; deterministic for a fixed seed.
const std::vector<std::pair<std::string, SuiteFn>>& identity_suites();

// Throws DomainError for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, Int samples);

}  // namespace shiftsim

#endif
