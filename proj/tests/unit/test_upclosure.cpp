#include <random>

#include "doctest.h"
#include "sepclass/corpus.hpp"
#include "sepclass/upclosure.hpp"

using namespace sepclass;
using namespace sepclass::upclosure;

namespace {

UseBound linear(Nat mul, Nat add, Nat size) {
  std::vector<Nat> t;
  for (Nat x = 0; x < size; ++x) t.push_back(mul * x + add);
  return UseBound(t);
}

StageSet at_stage_one(const std::set<Nat>& xs, Nat horizon) {
  StageSet s(horizon);
  for (Nat x : xs) s.enumerate(x, Stage{1});
  return s;
}

// Direct reading of the case-2 recursion on plain sets.
std::vector<Pos> brute_case2(const std::set<Nat>& u, const std::vector<Nat>& f, std::size_t count) {
  auto inside = [&](Pos lo, Pos hi) {
    for (Pos y = lo + 1; y <= hi; ++y) {
      if (!u.count(static_cast<Nat>(y))) return false;
    }
    return true;
  };
  std::vector<Pos> m{-1};
  while (m.size() < count) {
    bool found = false;
    for (Pos x = m.back() + 1; x < static_cast<Pos>(f.size()); ++x) {
      if (!inside(m.back(), x) && inside(x, static_cast<Pos>(f[x]))) {
        m.push_back(x);
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  return m;
}

}  // namespace

TEST_CASE("empty pair is consistent with case1(0)") {
  StageSet a(10), b(10);
  CHECK(classify_case(a, b, linear(1, 1, 20), 10, 20, CaseTag::case1(0)));
}

TEST_CASE("a cofinite union is a hypothesis problem, not a case verdict") {
  const Nat dom = 20;
  std::set<Nat> ev, od;
  for (Nat x = 0; x < dom; ++x) (x % 2 ? od : ev).insert(x);
  Scenario sc;
  sc.horizon = 5;
  sc.domain = dom;
  sc.a = at_stage_one(ev, 5);
  sc.b = at_stage_one(od, 5);
  auto ops = corpus::shift_operators(1, 0, dom);
  sc.gamma = ops.gamma;
  sc.delta = ops.delta;
  sc.f = ops.f;
  const auto problems = audit_hypotheses(sc);
  REQUIRE_FALSE(problems.empty());
  bool hole_problem = false;
  for (const auto& p : problems) hole_problem = hole_problem || p.find("hole") != std::string::npos;
  CHECK(hole_problem);
  try {
    run(sc);
    FAIL("expected a hypothesis error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Hypothesis);
  }
}

TEST_CASE("covered points are counted by brute force") {
  // f(x) = x + 2: cover (5, 7] and (9, 11].
  const auto f = linear(1, 2, 30);
  const std::set<Nat> u{6, 7, 10, 11};
  StageSet a = at_stage_one({6, 10}, 4), b = at_stage_one({7, 11}, 4);
  std::vector<Nat> brute;
  for (Nat x = 0; x + 2 < 30; ++x) {
    if (u.count(x + 1) && u.count(x + 2)) brute.push_back(x);
  }
  CHECK(covered_points(a, b, f, Stage{4}, 30) == brute);
  CHECK(brute == std::vector<Nat>{5, 9});
  // Threshold ceil(30 / 10) = 3 covered points: two is not enough.
  CHECK_FALSE(classify_case(a, b, f, 4, 30, CaseTag::case2()));
  CHECK(classify_case(a, b, f, 4, 30, CaseTag::case1(10)));
  CHECK_FALSE(classify_case(a, b, f, 4, 30, CaseTag::case1(9)));
}

TEST_CASE("case-1 m-sequences iterate f") {
  StageSet a(1), b(1);
  CHECK(m_sequence(CaseTag::case1(3), a, b, Stage{1}, linear(1, 1, 10), 3).seq.values ==
        std::vector<Pos>{3, 4, 5});
  CHECK(m_sequence(CaseTag::case1(1), a, b, Stage{1}, linear(2, 1, 10), 3).seq.values ==
        std::vector<Pos>{1, 3, 7});
  CHECK_THROWS_AS(m_sequence(CaseTag::case1(1), a, b, Stage{1}, linear(2, 1, 4), 5), Error);
}

TEST_CASE("case-2 m-sequence matches the direct recursion on random pairs") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 300; ++round) {
    std::set<Nat> as, bs, u;
    for (Nat x = 0; x < 48; ++x) {
      const auto r = rng() % 5;
      if (r < 2) as.insert(x);
      else if (r < 4) bs.insert(x);
    }
    u.insert(as.begin(), as.end());
    u.insert(bs.begin(), bs.end());
    std::vector<Nat> ft;
    for (Nat x = 0; x < 40; ++x) ft.push_back(x + 2);
    const auto got = m_sequence(CaseTag::case2(), at_stage_one(as, 2), at_stage_one(bs, 2),
                                Stage{2}, UseBound(ft), 12);
    CHECK(got.seq.values == brute_case2(u, ft, 12));
    CHECK(got.seq.strictly_increasing());
    CHECK(got.not_yet.has_value() == (got.seq.values.size() < 12));
  }
}

TEST_CASE("encoding follows the block rules position by position") {
  const std::set<Nat> as{1, 5, 8}, bs{2, 6, 9};
  const auto a = at_stage_one(as, 3), b = at_stage_one(bs, 3);
  MSequence m{{0, 3, 6, 9}};
  const auto z_none = encode_separator(StageSet(3), m, a, b, Stage{3}, 10);
  const auto z_all = encode_separator(at_stage_one({0, 1, 2}, 3), m, a, b, Stage{3}, 10);
  const auto z_one = encode_separator(at_stage_one({1}, 3), m, a, b, Stage{3}, 10);
  for (Nat x = 0; x < 10; ++x) {
    CHECK(z_none[x] == (as.count(x) == 1));
    const bool co_b = bs.count(x) == 0;
    CHECK(z_all[x] == (x == 0 ? as.count(x) == 1 : co_b));
    const bool in_block1 = x > 3 && x <= 6;
    CHECK(z_one[x] == (in_block1 ? co_b : as.count(x) == 1));
  }
  CHECK_THROWS_AS(encode_separator(StageSet(3), m, a, b, Stage{3}, 11), Error);
}

TEST_CASE("decoding reads back C") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    for (auto kind : {CaseTag::Kind::Case1, CaseTag::Kind::Case2}) {
      const auto sc = corpus::upclosure_scenario(kind, seed);
      const Stage h{sc.horizon};
      const auto ms = m_sequence(sc.declared, sc.a, sc.b, h, sc.f, sc.blocks + 1);
      const auto z = encode_separator(sc.c, ms.seq, sc.a, sc.b, h,
                                      static_cast<Nat>(ms.seq.values.back() + 1));
      for (Nat n = 0; n < sc.blocks; ++n) {
        const auto d = decode_block(z, sc.a, sc.b, ms.seq.values[n], ms.seq.values[n + 1], sc.horizon);
        CHECK(d.bit == sc.c.contains(n));
        CHECK(d.stage <= sc.horizon);
      }
    }
  }
}

TEST_CASE("recovered block ends match the direct recursion") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto sc = corpus::upclosure_scenario(CaseTag::Kind::Case2, seed);
    const Stage h{sc.horizon};
    const auto ms = m_sequence(sc.declared, sc.a, sc.b, h, sc.f, sc.blocks + 1);
    const auto z = encode_separator(sc.c, ms.seq, sc.a, sc.b, h,
                                    static_cast<Nat>(ms.seq.values.back() + 1));
    MSequence prefix{{-1}};
    for (Nat n = 0; n < sc.blocks; ++n) {
      const auto r = recover_m_next(z, sc.a, sc.b, sc.gamma, sc.delta, sc.f, prefix, sc.horizon);
      CHECK(r.value == ms.seq.values[n + 1]);
      prefix.values.push_back(r.value);
    }
  }
}

TEST_CASE("a corrupted block stops recovery or is caught") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sc = corpus::upclosure_scenario(CaseTag::Kind::Case2, seed);
    if (sc.blocks < 3) continue;
    auto t = run(sc);
    // Drop an A-element of block 1 from Z.
    const Pos lo = t.m.values[1], hi = t.m.values[2];
    Pos victim = -1;
    for (Pos y = lo + 1; y <= hi && victim < 0; ++y) {
      if (sc.a.contains(static_cast<Nat>(y))) victim = y;
    }
    REQUIRE(victim >= 0);
    t.z.set(static_cast<Nat>(victim), false);
    MSequence prefix{{-1, lo, hi}};
    bool caught = false;
    try {
      const auto r = recover_m_next(t.z, sc.a, sc.b, sc.gamma, sc.delta, sc.f, prefix, sc.horizon);
      caught = r.value != t.m.values[3];
    } catch (const Error& e) {
      caught = e.kind() == ErrorKind::HorizonExceeded;
    }
    CHECK(caught);
    CHECK_FALSE(verify(sc, t).passed("separator"));
  }
}

TEST_CASE("a covered first candidate is skipped") {
  // f(x) = x + 2, A u B = {0, 1, 2, 3, 5, 6}. x = 0 has (0, 2] covered but
  // (-1, 0] has no hole; x = 4 is the first candidate with both bullets.
  const Nat dom = 20;
  const auto a = at_stage_one({0, 2, 5}, 4), b = at_stage_one({1, 3, 6}, 4);
  const auto ms = m_sequence(CaseTag::case2(), a, b, Stage{4}, linear(1, 2, dom), 2);
  std::vector<Nat> ft;
  for (Nat x = 0; x < dom; ++x) ft.push_back(x + 2);
  CHECK(ms.seq.values == brute_case2({0, 1, 2, 3, 5, 6}, ft, 2));
  CHECK(ms.seq.values == std::vector<Pos>{-1, 4});
}

TEST_CASE("generated corpus verifies clean, mutual exclusion included") {
  for (const auto& sc : corpus::upclosure_corpus(30, 100)) {
    const auto t = run(sc);
    const auto rep = verify(sc, t);
    CHECK(rep.all_passed());
    for (const auto& b : t.blocks) CHECK(b.double_agreement.empty());
  }
}
