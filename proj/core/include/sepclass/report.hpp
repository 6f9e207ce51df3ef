#pragma once

#include <string>
#include <vector>

#include "sepclass/types.hpp"

namespace sepclass {

struct Counterexample {
  Nat stage = 0;
  std::string actor;
  Pos element = -1;
  std::string detail;
};

/// Outcome of one named invariant over a trace.
struct Verdict {
  Verdict() = default;
  Verdict(std::string name, std::string claim)
      : invariant(std::move(name)), anchor(std::move(claim)) {}

  std::string invariant;
  // The statement of the construction's proof the invariant instantiates.
  std::string anchor;
  bool passed = true;
  // Informational verdicts report horizon-relative quantities and never fail.
  bool informational = false;
  std::vector<Counterexample> counterexamples;
  std::string caveat;
  // Free-form census lines (counts, last-change stages).
  std::vector<std::string> details;

  static constexpr std::size_t kMaxCounterexamples = 16;

  void fail(Counterexample c) {
    passed = false;
    if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(std::move(c));
  }
};

struct VerificationReport {
  std::string construction;
  std::vector<Verdict> verdicts;

  bool all_passed() const {
    for (const auto& v : verdicts) {
      if (!v.passed) return false;
    }
    return true;
  }

  const Verdict* find(const std::string& invariant) const {
    for (const auto& v : verdicts) {
      if (v.invariant == invariant) return &v;
    }
    return nullptr;
  }

  bool passed(const std::string& invariant) const {
    const auto* v = find(invariant);
    return v != nullptr && v->passed;
  }

  std::vector<std::string> failed_invariants() const {
    std::vector<std::string> out;
    for (const auto& v : verdicts) {
      if (!v.passed) out.push_back(v.invariant);
    }
    return out;
  }
};

}  // namespace sepclass
