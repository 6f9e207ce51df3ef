#include <random>

#include "sepclass/corpus.hpp"

namespace sepclass::corpus {

const char* to_string(AnticompleteAdversary kind) {
  switch (kind) {
    case AnticompleteAdversary::Empty: return "empty";
    case AnticompleteAdversary::AlwaysZero: return "always-zero";
    case AnticompleteAdversary::Shifted: return "shifted";
    case AnticompleteAdversary::Mixed: return "mixed";
  }
  return "?";
}

namespace {

// Φ^σ(y) = σ(y - d) for y >= d, with use y - d + 1; below d the answer is 0.
// Claims start at 4, so d <= 4 keeps the constant prefix consistent with D.
OracleProgram shifted_program(Nat d, Nat delay, Nat inputs) {
  OracleProgram p;
  if (d > 0) p.add_block({Guard(), 0, std::vector<bool>(d, false), 1, 0});
  for (Nat y = d; y < inputs; ++y) {
    const Nat pos = y - d;
    for (bool bit : {false, true}) {
      p.add_rule({Guard({{pos, bit}}), y, bit, pos + 1, pos + delay});
    }
  }
  return p;
}

}  // namespace

anticomplete::Scenario anticomplete_scenario(AnticompleteAdversary kind, std::uint64_t seed,
                                             Nat horizon) {
  std::mt19937_64 rng(seed);
  anticomplete::Scenario sc;
  sc.horizon = horizon;
  // Claimed numbers stay within a small multiple of the horizon.
  const Nat inputs = 4 * horizon + 16;
  switch (kind) {
    case AnticompleteAdversary::Empty:
      break;
    case AnticompleteAdversary::AlwaysZero: {
      OracleProgram p;
      p.add_block({Guard(), 0, std::vector<bool>(inputs, false), 1, 0});
      sc.phi[0] = std::move(p);
      break;
    }
    case AnticompleteAdversary::Shifted: {
      const Nat e_count = 1 + rng() % 4;
      for (Nat k = 0; k < e_count; ++k) {
        const Nat e = rng() % 6;
        sc.phi[e] = shifted_program(3 + rng() % 2, rng() % 3, inputs);
      }
      break;
    }
    case AnticompleteAdversary::Mixed: {
      for (Nat e = 0; e < 8; ++e) {
        switch (rng() % 4) {
          case 0:
            break;
          case 1: {
            OracleProgram p;
            const Nat use = 1 + rng() % 5;
            p.add_block({Guard(), 0, std::vector<bool>(inputs, false), use, rng() % 40});
            sc.phi[e] = std::move(p);
            break;
          }
          default:
            sc.phi[e] = shifted_program(rng() % 3 == 0 ? 2 + rng() % 20 : 3 + rng() % 2, rng() % 10, inputs);
        }
      }
      break;
    }
  }
  for (auto& [e, p] : sc.phi) p.validate();
  return sc;
}

std::vector<anticomplete::Scenario> anticomplete_corpus(std::size_t count, Nat horizon,
                                                        std::uint64_t seed) {
  static constexpr AnticompleteAdversary kinds[] = {
      AnticompleteAdversary::Shifted, AnticompleteAdversary::Mixed,
      AnticompleteAdversary::AlwaysZero, AnticompleteAdversary::Empty};
  std::vector<anticomplete::Scenario> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(anticomplete_scenario(kinds[i % 4], seed + i, horizon));
  }
  return out;
}

}  // namespace sepclass::corpus
