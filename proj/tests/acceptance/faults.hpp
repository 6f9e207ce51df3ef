#pragma once

// Injected faults: each one corrupts a correct scenario/trace pair so that a
// named verdict must fail.

#include <functional>
#include <string>
#include <vector>

#include "sepclass/harness.hpp"

namespace sepclass::acceptance {

struct Fault {
  std::string name;
  harness::Construction construction;
  std::string target;
  // False when the base run has nothing to corrupt; the next base is tried.
  std::function<bool(harness::AnyScenario&, harness::AnyTrace&)> inject;
};

std::vector<Fault> all_faults();

struct FaultResult {
  std::string name, target;
  bool applied = false;
  bool target_failed = false;
  std::vector<std::string> failed;
};

/// Applies each fault to the first base of its construction it fits.
std::vector<FaultResult> run_faults(const std::vector<harness::AnyScenario>& bases);

}  // namespace sepclass::acceptance
