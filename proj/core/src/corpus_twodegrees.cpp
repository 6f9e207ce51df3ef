#include <random>
#include <set>

#include "sepclass/corpus.hpp"

namespace sepclass::corpus {

const char* to_string(TwodegreesAdversary kind) {
  switch (kind) {
    case TwodegreesAdversary::Empty: return "empty";
    case TwodegreesAdversary::Random: return "random";
    case TwodegreesAdversary::ColumnHunter: return "column-hunter";
  }
  return "?";
}

namespace {

StageSet random_set(std::mt19937_64& rng, Nat bound, Nat count, Nat first, Nat last, Nat horizon) {
  std::set<Nat> picked;
  std::vector<Entry> ev;
  for (Nat j = 0; j < count; ++j) {
    const Nat x = rng() % bound;
    if (!picked.insert(x).second) continue;
    ev.push_back({x, first + rng() % (last - first + 1)});
  }
  return StageSet::from_events(ev, horizon);
}

// Two computations over [0, inputs): one reading a zero oracle below u1 from
// stage 0, one reading W_e's final prefix below u2 that turns up later. W_e
// gets an element below u1, so the first dies when it arrives.
OracleProgram two_phase_program(std::mt19937_64& rng, StageSet& w, Nat horizon, Nat inputs,
                                bool hunt) {
  const Nat u1 = 1 + rng() % 6;
  const Nat u2 = u1 + 1 + rng() % 6;
  if (w.snapshot(Stage{horizon}).empty() || *w.snapshot(Stage{horizon}).begin() >= u1) {
    Nat x = rng() % u1;
    while (w.contains(x)) x = (x + 1) % u1;
    w.enumerate(x, Stage{1 + rng() % (horizon / 2)});
  }
  std::set<Nat> codes;
  if (hunt) {
    for (Nat n = 0; n <= 10; ++n) {
      for (Nat i = 0; i < n * n + 1; ++i) codes.insert(pair(n, i));
    }
  }
  auto outputs = [&] {
    std::vector<bool> out(inputs);
    for (Nat y = 0; y < inputs; ++y) out[y] = hunt ? !codes.count(y) || rng() % 4 == 0 : rng() % 3 != 0;
    return out;
  };
  std::vector<GuardLiteral> zero, final_prefix;
  for (Nat p = 0; p < u1; ++p) zero.push_back({p, false});
  const auto fin = w.characteristic(Stage{horizon}, u2);
  for (Nat p = 0; p < u2; ++p) final_prefix.push_back({p, fin[p]});
  OracleProgram phi;
  phi.add_block({Guard(zero), 0, outputs(), u1, 0});
  phi.add_block({Guard(final_prefix), 0, outputs(), u2, 1 + rng() % horizon});
  phi.validate();
  return phi;
}

}  // namespace

twodegrees::Scenario twodegrees_scenario(TwodegreesAdversary kind, std::uint64_t seed, Nat horizon) {
  std::mt19937_64 rng(seed);
  twodegrees::Scenario sc;
  sc.horizon = horizon;
  sc.columns = 10;
  const Nat late = std::max<Nat>(2, horizon);
  sc.c = random_set(rng, 9, 3 + rng() % 6, 1, late, horizon);
  sc.k = random_set(rng, 11, 3 + rng() % 8, 1, late, horizon);
  if (kind == TwodegreesAdversary::Empty) return sc;
  const Nat e_count = 1 + rng() % 4;
  const Nat inputs = horizon + 1;
  for (Nat e = 0; e < e_count; ++e) {
    auto w = random_set(rng, 12, rng() % 5, 1, late, horizon);
    auto phi = two_phase_program(rng, w, horizon, inputs, kind == TwodegreesAdversary::ColumnHunter);
    sc.w.push_back(std::move(w));
    sc.phi.push_back(std::move(phi));
  }
  return sc;
}

std::vector<twodegrees::Scenario> twodegrees_corpus(std::size_t count, Nat horizon, std::uint64_t seed) {
  static constexpr TwodegreesAdversary kinds[] = {TwodegreesAdversary::ColumnHunter, TwodegreesAdversary::Random,
                                                   TwodegreesAdversary::Empty};
  std::vector<twodegrees::Scenario> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(twodegrees_scenario(kinds[i % 3], seed + i, horizon));
  return out;
}

}  // namespace sepclass::corpus
