#pragma once

// Deterministic scenario generators. The acceptance suite and `sepsim
// gen-corpus` both draw from here, so a seed names a scenario exactly.

#include <cstdint>
#include <string>
#include <vector>

#include "sepclass/anticomplete.hpp"
#include "sepclass/nosupermax.hpp"
#include "sepclass/twodegrees.hpp"
#include "sepclass/upclosure.hpp"

namespace sepclass::corpus {

enum class AnticompleteAdversary {
  Empty,      // every Φ_e diverges
  AlwaysZero, // Φ_0^σ(y) = 0 with use 1
  Shifted,    // Φ_e^σ(y) = σ(y - d): tries to read D off the separator
  Mixed,      // shifted copies plus constant answers and delayed rules
};

const char* to_string(AnticompleteAdversary kind);

anticomplete::Scenario anticomplete_scenario(AnticompleteAdversary kind, std::uint64_t seed,
                                             Nat horizon);

/// `count` scenarios cycling through the adversary kinds.
std::vector<anticomplete::Scenario> anticomplete_corpus(std::size_t count, Nat horizon,
                                                        std::uint64_t seed);

/// Γ^A(x) = A(x - d) (0 below d) and Δ^B(x) = B(x + d) on [0, domain), with
/// f(x) = x + d + 1 + c. Together they witness A ≡wtt B when B = A + d.
struct ShiftOperators {
  UseBoundedOperator gamma, delta;
  UseBound f;
};
ShiftOperators shift_operators(Nat d, Nat c, Nat domain);

/// A settled scenario of the given case: B = A + d, domain <= 64, blocks <= 8.
upclosure::Scenario upclosure_scenario(upclosure::CaseTag::Kind kind, std::uint64_t seed);

/// `per_case` scenarios of each case.
std::vector<upclosure::Scenario> upclosure_corpus(std::size_t per_case, std::uint64_t seed);

enum class NosupermaxAdversary {
  Empty,     // A = B = ∅
  Random,    // fixed fates with random entry lags
  AbsorbA,   // periodically moves X_1's members above a threshold into A
  AbsorbB,   // periodically moves X_1's non-members above a threshold into B
  TwoPhase,  // AbsorbA against X_1, then the mirror policy against X_2
};

const char* to_string(NosupermaxAdversary kind);

/// Scenario with explicit certificates for every attempt that visibly fails.
nosupermax::Scenario nosupermax_scenario(NosupermaxAdversary kind, std::uint64_t seed,
                                         Nat horizon);

/// `count` scenarios cycling Random, AbsorbA, AbsorbB, TwoPhase, Empty.
std::vector<nosupermax::Scenario> nosupermax_corpus(std::size_t count, Nat horizon,
                                                    std::uint64_t seed);

enum class TwodegreesAdversary {
  Empty,         // no R_e at all
  Random,        // Φ_e answers at random, first from a zero oracle, then W_e's final prefix
  ColumnHunter,  // as Random, but answers 0 mostly on small column codes
};

const char* to_string(TwodegreesAdversary kind);

/// C within [0, 9), K within [0, 11), up to four R_e with small W_e.
twodegrees::Scenario twodegrees_scenario(TwodegreesAdversary kind, std::uint64_t seed, Nat horizon);

/// `count` scenarios cycling ColumnHunter, Random, Empty.
std::vector<twodegrees::Scenario> twodegrees_corpus(std::size_t count, Nat horizon, std::uint64_t seed);

}  // namespace sepclass::corpus
