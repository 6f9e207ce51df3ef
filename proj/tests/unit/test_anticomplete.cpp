#include <chrono>

#include "doctest.h"
#include "sepclass/anticomplete.hpp"
#include "sepclass/corpus.hpp"

using namespace sepclass;
using namespace sepclass::anticomplete;

namespace {

std::set<Nat> final_union(const Trace& t) {
  std::set<Nat> out;
  for (const auto& ev : t.events) {
    out.insert(ev.into_a.begin(), ev.into_a.end());
    out.insert(ev.into_b.begin(), ev.into_b.end());
  }
  return out;
}

Nat count_kind(const Trace& t, Event::Kind k, Nat position) {
  Nat c = 0;
  for (const auto& ev : t.events) c += ev.kind == k && ev.position == position;
  return c;
}

}  // namespace

TEST_CASE("priority positions alternate N and R") {
  CHECK(StrategyRef::at(0) == StrategyRef{StrategyRef::Kind::N, 0});
  CHECK(StrategyRef::at(1) == StrategyRef{StrategyRef::Kind::R, 0});
  CHECK(StrategyRef::at(6).name() == "N3");
  CHECK(StrategyRef::parse("R4").position() == 9);
  CHECK_THROWS_AS(StrategyRef::parse("Q1"), Error);
}

TEST_CASE("N-strategy waits for s > k and acts once") {
  NStrategyState st{5, {}, 0};
  CHECK_FALSE(n_strategy_step(st, 3));
  CHECK(n_strategy_step(st, 6));
  CHECK(st.restraint == 7);
  CHECK_FALSE(n_strategy_step(st, 7));
  // Initialization at stage 10 clears the state.
  st.satisfied_at.reset();
  st.restraint = 0;
  CHECK(n_strategy_step(st, 11));
  CHECK(st.restraint == 12);
}

TEST_CASE("stage 0 runs nothing") {
  Scenario sc;
  sc.horizon = 5;
  Construction c(sc);
  c.run_stage();
  CHECK(c.stage() == 1);
  CHECK(c.trace().events.empty());
}

TEST_CASE("R-step with no sigma keeps searching") {
  OracleProgram phi;
  StageSet a(10), b(10), d(10);
  RStrategyState st;
  st.claimed_n = 4;
  CHECK_FALSE(r_strategy_step(st, StageView{a, b, d, 3}, phi).has_value());
  CHECK(st.claimed_n == Nat{4});
  CHECK(st.phase == RStrategyState::Phase::Searching);
}

TEST_CASE("R-step enumerates n into D even without a qualifying m") {
  OracleProgram phi;
  phi.add_block({Guard(), 0, std::vector<bool>(8, false), 1, 0});
  StageSet a(10), b(10), d(10);
  RStrategyState st;
  st.claimed_n = 6;
  const auto act = r_strategy_step(st, StageView{a, b, d, 3}, phi);
  REQUIRE(act.has_value());
  CHECK(act->m == -1);
  CHECK(act->into_a.empty());
  CHECK(act->into_b.empty());
  CHECK(act->into_d == 6);
}

TEST_CASE("R-step copies sigma from the least qualifying m") {
  // Only σ = 101 makes Φ(0) converge. 0 is already in A and σ(1) = 0, so m = 2.
  OracleProgram phi;
  phi.add_rule({Guard({{0, true}, {1, false}, {2, true}}), 0, false, 3, 0});
  StageSet a(10), b(10), d(10);
  a.enumerate(0, Stage{1});
  RStrategyState st;
  st.claimed_n = 0;
  auto act = r_strategy_step(st, StageView{a, b, d, 3}, phi);
  REQUIRE(act.has_value());
  CHECK(act->sigma == std::vector<bool>{true, false, true});
  CHECK(act->m == 2);
  CHECK(act->into_a == std::vector<Nat>{2});
  CHECK(act->into_b.empty());
  CHECK(act->into_d == 0);

  // σ = 1001 with nothing forced: m = 0 and the whole string is copied.
  OracleProgram psi;
  psi.add_rule({Guard({{0, true}, {1, false}, {2, false}, {3, true}}), 0, false, 4, 0});
  StageSet a2(10), b2(10), d2(10);
  st.claimed_n = 0;
  act = r_strategy_step(st, StageView{a2, b2, d2, 4}, psi);
  REQUIRE(act.has_value());
  CHECK(act->m == 0);
  CHECK(act->into_a == std::vector<Nat>{0, 3});
  CHECK(act->into_b == std::vector<Nat>{1, 2});

  // With restraint 1 the least qualifying m is 3.
  st.claimed_n = 0;
  st.restraint = 1;
  act = r_strategy_step(st, StageView{a2, b2, d2, 4}, psi);
  REQUIRE(act.has_value());
  CHECK(act->m == 3);
  CHECK(act->into_a == std::vector<Nat>{3});
  CHECK(act->into_b.empty());
}

TEST_CASE("sigma search returns the lexicographically least solution") {
  // Φ(0) = 0 when σ(1) = 1 or when σ(2) = 1.
  OracleProgram phi;
  phi.add_rule({Guard({{1, true}}), 0, false, 2, 0});
  phi.add_rule({Guard({{1, false}, {2, true}}), 0, false, 3, 0});
  StageSet a(10), b(10), d(10);
  const auto sigma = find_sigma(phi, StageView{a, b, d, 4}, 0);
  REQUIRE(sigma.has_value());
  // Candidates of length 4, lexicographic: 0010 < 0100.
  CHECK(*sigma == std::vector<bool>{false, false, true, false});
  b.enumerate(2, Stage{1});
  const auto forced = find_sigma(phi, StageView{a, b, d, 4}, 0);
  REQUIRE(forced.has_value());
  CHECK(*forced == std::vector<bool>{false, true, false, false});
}

TEST_CASE("empty adversary: D stays empty, every N that runs is satisfied") {
  const auto sc = corpus::anticomplete_scenario(corpus::AnticompleteAdversary::Empty, 1, 100);
  Construction c(sc);
  c.run_to_horizon();
  CHECK(c.d().empty());
  // N_k sits at position 2k and runs from stage 2k + 1 on.
  for (Nat k = 0; 2 * k + 1 < 100; ++k) CHECK(c.n_state(k).satisfied_at.has_value());
  CHECK(verify(sc, c.trace()).all_passed());
}

TEST_CASE("always-zero adversary: R_0 acts and respects restraints") {
  const auto sc =
      corpus::anticomplete_scenario(corpus::AnticompleteAdversary::AlwaysZero, 1, 500);
  const auto trace = run(sc);
  CHECK(count_kind(trace, Event::Kind::RAct, 1) >= 1);
  const auto report = verify(sc, trace);
  CHECK(report.all_passed());
  // Per-strategy D-counts are flat over the last 100 stages.
  for (const auto& ev : trace.events) {
    if (ev.kind == Event::Kind::RAct) CHECK(ev.stage < 400);
  }
}

TEST_CASE("N-preservation at the horizon on adversarial runs") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto sc =
        corpus::anticomplete_scenario(corpus::AnticompleteAdversary::Shifted, seed, 300);
    const auto trace = run(sc);
    const auto members = final_union(trace);
    std::map<Nat, std::size_t> last_init;
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const auto& ev = trace.events[i];
      if (ev.kind == Event::Kind::Init) {
        for (Nat q = ev.position; q < 2 * trace.horizon; q += 1) last_init[q] = i;
      }
    }
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const auto& ev = trace.events[i];
      if (ev.kind != Event::Kind::NAct) continue;
      auto it = last_init.find(ev.position);
      if (it != last_init.end() && it->second > i) continue;
      CHECK(members.count(ev.stage) == 0);
    }
    CHECK(verify(sc, trace).all_passed());
  }
}

TEST_CASE("shifted adversaries make strategies act") {
  Nat total = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto sc =
        corpus::anticomplete_scenario(corpus::AnticompleteAdversary::Shifted, seed, 300);
    const auto trace = run(sc);
    for (const auto& ev : trace.events) total += ev.kind == Event::Kind::RAct && !ev.into_b.empty();
  }
  CHECK(total > 0);
}

TEST_CASE("claims are strictly increasing") {
  const auto sc = corpus::anticomplete_scenario(corpus::AnticompleteAdversary::Mixed, 7, 300);
  const auto trace = run(sc);
  std::optional<Nat> last;
  for (const auto& ev : trace.events) {
    if (ev.kind != Event::Kind::Claim) continue;
    if (last) CHECK(ev.n > *last);
    last = ev.n;
  }
}

TEST_CASE("verifier flags an injected B-entry without an A companion") {
  const auto sc = corpus::anticomplete_scenario(corpus::AnticompleteAdversary::Shifted, 2, 300);
  auto trace = run(sc);
  bool injected = false;
  for (auto& ev : trace.events) {
    if (ev.kind == Event::Kind::RAct && !ev.into_b.empty()) {
      ev.into_a.clear();
      injected = true;
      break;
    }
  }
  REQUIRE(injected);
  const auto report = verify(sc, trace);
  CHECK_FALSE(report.passed("wtt-promise"));
}

TEST_CASE("identical scenarios give identical traces") {
  const auto sc = corpus::anticomplete_scenario(corpus::AnticompleteAdversary::Mixed, 3, 200);
  const auto t1 = run(sc), t2 = run(sc);
  REQUIRE(t1.events.size() == t2.events.size());
  for (std::size_t i = 0; i < t1.events.size(); ++i) {
    CHECK(t1.events[i].stage == t2.events[i].stage);
    CHECK(t1.events[i].sigma == t2.events[i].sigma);
    CHECK(t1.events[i].into_a == t2.events[i].into_a);
  }
}
