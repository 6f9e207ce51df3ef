#include <random>

#include "doctest.h"
#include "sepclass/functionals.hpp"

using namespace sepclass;

namespace {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  Nat below(Nat n) { return rng() % n; }
};

Rule random_rule(Gen& g, Nat max_use, Nat inputs) {
  Rule r;
  r.use = 1 + g.below(max_use);
  r.input = g.below(inputs);
  r.output = g.below(2) == 1;
  r.available_at = g.below(5);
  std::vector<GuardLiteral> lits;
  for (Nat p = 0; p < r.use; ++p) {
    if (g.below(2)) lits.push_back({p, g.below(2) == 1});
  }
  r.guard = Guard(lits);
  return r;
}

// Keeps adding random rules, dropping any that breaks validation.
std::vector<Rule> random_valid_rules(Gen& g, std::size_t count, Nat max_use, Nat inputs) {
  std::vector<Rule> rules;
  while (rules.size() < count) {
    auto r = random_rule(g, max_use, inputs);
    OracleProgram trial;
    for (const auto& q : rules) trial.add_rule(q);
    trial.add_rule(r);
    try {
      trial.validate();
      rules.push_back(r);
    } catch (const Error&) {
    }
  }
  return rules;
}

OracleProgram program_of(const std::vector<Rule>& rules) {
  OracleProgram p;
  for (const auto& r : rules) p.add_rule(r);
  return p;
}

// Independent scan: every rule checked literal by literal.
Evaluation scan(const std::vector<Rule>& rules, const std::vector<bool>& oracle, Nat y, Nat s) {
  const Rule* best = nullptr;
  for (const auto& r : rules) {
    if (r.input != y || r.available_at > s || r.use > oracle.size()) continue;
    bool ok = true;
    for (const auto& l : r.guard.literals()) ok = ok && oracle[l.pos] == l.bit;
    if (!ok) continue;
    if (!best || r.use < best->use || (r.use == best->use && r.available_at < best->available_at)) {
      best = &r;
    }
  }
  if (!best) return Evaluation::diverged();
  return {true, best->output, best->use};
}

std::vector<bool> bits_of(Nat v, Nat len) {
  std::vector<bool> out(len);
  for (Nat i = 0; i < len; ++i) out[i] = (v >> i) & 1;
  return out;
}

UseBoundedOperator identity_op(Nat size) {
  OracleProgram p;
  std::vector<Nat> f;
  for (Nat x = 0; x < size; ++x) {
    p.add_rule({Guard({{x, true}}), x, true, x + 1, 0});
    p.add_rule({Guard({{x, false}}), x, false, x + 1, 0});
    f.push_back(x + 1);
  }
  return UseBoundedOperator(p, UseBound(f));
}

}  // namespace

TEST_CASE("empty program diverges") {
  OracleProgram p;
  CHECK_FALSE(p.evaluate(std::vector<bool>{true, false}, 3, 100).halted);
}

TEST_CASE("single rule matches directly") {
  OracleProgram p;
  p.add_rule({Guard({{0, true}}), 5, false, 1, 0});
  CHECK(p.evaluate(SeparatorSnapshot::from_string("1"), 5, 0) == Evaluation{true, false, 1});
  CHECK_FALSE(p.evaluate(SeparatorSnapshot::from_string("0"), 5, 0).halted);
  CHECK_FALSE(p.evaluate(std::vector<bool>{}, 5, 0).halted);
}

TEST_CASE("availability delays convergence") {
  OracleProgram p;
  p.add_rule({Guard(), 0, true, 1, 4});
  CHECK_FALSE(p.evaluate(std::vector<bool>{false}, 0, 3).halted);
  CHECK(p.evaluate(std::vector<bool>{false}, 0, 4).halted);
}

TEST_CASE("validation rejects dishonest and nondeterministic programs") {
  OracleProgram dishonest;
  dishonest.add_rule({Guard({{3, true}}), 0, true, 2, 0});
  CHECK_THROWS_AS(dishonest.validate(), Error);

  OracleProgram split;
  split.add_rule({Guard({{0, true}}), 0, true, 1, 0});
  split.add_rule({Guard({{1, true}}), 0, false, 2, 0});
  CHECK_THROWS_AS(split.validate(), Error);

  OracleProgram fine;
  fine.add_rule({Guard({{0, true}}), 0, true, 1, 0});
  fine.add_rule({Guard({{0, false}}), 0, false, 1, 0});
  CHECK_NOTHROW(fine.validate());
  CHECK_THROWS_AS(Guard({{1, true}, {1, false}}), Error);
}

TEST_CASE("evaluate agrees with a rule scan on random programs") {
  Gen g(3);
  for (int round = 0; round < 60; ++round) {
    const auto rules = random_valid_rules(g, 10, 6, 4);
    const auto prog = program_of(rules);
    for (Nat len = 0; len <= 6; ++len) {
      for (Nat v = 0; v < (Nat{1} << len); ++v) {
        const auto oracle = bits_of(v, len);
        for (Nat y = 0; y < 4; ++y) {
          for (Nat s = 0; s < 6; s += 2) {
            CHECK(prog.evaluate(oracle, y, s) == scan(rules, oracle, y, s));
          }
        }
      }
    }
  }
}

TEST_CASE("bits at or above the use never matter") {
  Gen g(5);
  for (int round = 0; round < 40; ++round) {
    const auto prog = program_of(random_valid_rules(g, 10, 8, 3));
    for (Nat v = 0; v < 256; v += 3) {
      auto oracle = bits_of(v, 8);
      for (Nat y = 0; y < 3; ++y) {
        const auto base = prog.evaluate(oracle, y, 10);
        if (!base.halted) continue;
        for (Nat p = base.use; p < 8; ++p) {
          oracle[p] = !oracle[p];
          CHECK(prog.evaluate(oracle, y, 10) == base);
          oracle[p] = !oracle[p];
        }
      }
    }
  }
}

TEST_CASE("convergence persists at later stages") {
  Gen g(9);
  for (int round = 0; round < 40; ++round) {
    const auto prog = program_of(random_valid_rules(g, 10, 5, 3));
    for (Nat v = 0; v < 32; ++v) {
      const auto oracle = bits_of(v, 5);
      for (Nat y = 0; y < 3; ++y) {
        for (Nat s = 0; s < 6; ++s) {
          const auto e = prog.evaluate(oracle, y, s);
          if (!e.halted) continue;
          for (Nat t = s; t < 8; ++t) CHECK(prog.evaluate(oracle, y, t) == e);
        }
      }
    }
  }
}

TEST_CASE("use bounds must be strict and monotone") {
  CHECK_NOTHROW(UseBound({1, 2, 4}));
  CHECK_THROWS_AS(UseBound({1, 1}), Error);
  CHECK_THROWS_AS(UseBound({3, 2, 4}), Error);
  UseBound f({1, 3});
  try {
    f(2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundExhausted);
  }
}

TEST_CASE("operators reject rules beyond their bound") {
  OracleProgram p;
  p.add_rule({Guard(), 0, true, 3, 0});
  CHECK_THROWS_AS(UseBoundedOperator(p, UseBound({2})), Error);
}

TEST_CASE("wtt_apply on an identity-style operator") {
  const auto op = identity_op(10);
  CHECK(wtt_apply(op, {2}, 2, 0) == true);
  CHECK(wtt_apply(op, {}, 2, 0) == false);
  try {
    wtt_apply(op, {}, 10, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundExhausted);
  }
}

TEST_CASE("agreement check matches a bitwise comparison") {
  // Shift operator: Op^A(x) = A(x + 1), use x + 2.
  OracleProgram p;
  std::vector<Nat> f;
  for (Nat x = 0; x < 10; ++x) {
    p.add_rule({Guard({{x + 1, true}}), x, true, x + 2, 0});
    p.add_rule({Guard({{x + 1, false}}), x, false, x + 2, 0});
    f.push_back(x + 2);
  }
  const UseBoundedOperator op(p, UseBound(f));
  const std::set<Nat> a{1, 4, 5, 9};
  std::set<Nat> b;
  for (Nat x : a) b.insert(x - 1);
  std::set<Nat> b_bad = b;
  b_bad.insert(6);
  for (Nat x = 0; x <= 8; ++x) {
    bool brute = true, brute_bad = true;
    for (Nat y = 0; y <= x; ++y) {
      const bool want = a.count(y + 1) != 0;
      brute = brute && want == (b.count(y) != 0);
      brute_bad = brute_bad && want == (b_bad.count(y) != 0);
    }
    CHECK(wtt_agrees_below(op, a, b, x, 0) == brute);
    CHECK(wtt_agrees_below(op, a, b_bad, x, 0) == brute_bad);
  }
}
