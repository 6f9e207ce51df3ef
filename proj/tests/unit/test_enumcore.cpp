#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "sepclass/pairing.hpp"
#include "sepclass/separator.hpp"
#include "sepclass/stage_set.hpp"

using namespace sepclass;

namespace {

// Plain reimplementation of the greedy scheme: walk Cantor order, give each
// pair the least unused value >= n^3, found by linear scan over a std::set.
std::map<std::pair<Nat, Nat>, Nat> greedy_oracle(Nat diagonals) {
  std::map<std::pair<Nat, Nat>, Nat> out;
  std::set<Nat> used;
  for (Nat d = 0; d < diagonals; ++d) {
    for (Nat n = d + 1; n-- > 0;) {
      const Nat i = d - n;
      Nat v = n * n * n;
      while (used.count(v)) ++v;
      used.insert(v);
      out[{n, i}] = v;
    }
  }
  return out;
}

std::set<Nat> filter(const std::vector<Entry>& events, Nat s) {
  std::set<Nat> out;
  for (const auto& e : events) {
    if (e.stage <= s) out.insert(e.element);
  }
  return out;
}

}  // namespace

TEST_CASE("snapshot filters by entry stage") {
  const std::vector<Entry> ev{{3, 1}, {5, 4}};
  auto set = StageSet::from_events(ev, 10);
  CHECK(set.snapshot(Stage{2}) == std::set<Nat>{3});
  CHECK(set.snapshot(Stage{4}) == filter(ev, 4));
  CHECK(set.snapshot(Stage{4}) == std::set<Nat>{3, 5});
  CHECK(StageSet(7).snapshot(Stage{7}).empty());
}

TEST_CASE("snapshot past the horizon throws") {
  auto set = StageSet::from_events({{1, 1}}, 5);
  try {
    set.snapshot(Stage{6});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HorizonExceeded);
  }
}

TEST_CASE("scripted sets reject duplicates and late stages") {
  CHECK_THROWS_AS(StageSet::from_events({{1, 1}, {1, 2}}, 5), Error);
  CHECK_THROWS_AS(StageSet::from_events({{1, 9}}, 5), Error);
}

TEST_CASE("enumerate is append-only") {
  StageSet s(10);
  CHECK(s.enumerate(4, Stage{2}));
  CHECK_FALSE(s.enumerate(4, Stage{3}));
  CHECK(s.entry_stage(4) == Nat{2});
  CHECK_FALSE(s.contains_at(4, Stage{1}));
  CHECK(s.contains_at(4, Stage{2}));
}

TEST_CASE("snapshots are monotone on random scripted sets") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const Nat horizon = 1 + rng() % 40;
    StageSet set(horizon);
    std::vector<Entry> ev;
    for (int k = 0; k < 30; ++k) {
      const Nat x = rng() % 50, st = rng() % (horizon + 1);
      if (set.enumerate(x, Stage{st})) ev.push_back({x, st});
    }
    std::set<Nat> prev;
    for (Nat s = 0; s <= horizon; ++s) {
      auto snap = set.snapshot(Stage{s});
      CHECK(snap == filter(ev, s));
      for (Nat x : prev) CHECK(snap.count(x) == 1);
      prev = std::move(snap);
    }
  }
}

TEST_CASE("separator predicate") {
  const std::set<Nat> a{1, 4}, b{0, 2};
  CHECK(is_separator(SeparatorSnapshot::of_set(a, 6), a, b));
  SeparatorSnapshot cob(6);
  for (Nat x = 0; x < 6; ++x) cob.set(x, b.count(x) == 0);
  CHECK(is_separator(cob, a, b));
  CHECK_FALSE(is_separator(SeparatorSnapshot::from_string("010"), {0}, {}));
  try {
    is_separator(SeparatorSnapshot::from_string("01"), {5}, {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainMismatch);
  }
}

TEST_CASE("pairing frozen values") {
  PairingScheme p;
  CHECK(p.pair(0, 0) == 0);
  CHECK(p.pair(2, 0) == 8);
  CHECK(p.unpair(p.pair(3, 2)) == ColumnIndex{3, 2});
  CHECK(p.unpair(p.pair(0, 0)) == ColumnIndex{0, 0});
}

TEST_CASE("pairing agrees with the greedy oracle, n,i <= 50") {
  PairingScheme p;
  const auto oracle = greedy_oracle(101);
  std::set<Nat> seen;
  for (Nat n = 0; n <= 50; ++n) {
    for (Nat i = 0; i <= 50; ++i) {
      const Nat c = p.pair(n, i);
      CHECK(c == oracle.at({n, i}));
      CHECK(c >= n * n * n);
      CHECK(seen.insert(c).second);
      CHECK(p.unpair(c) == ColumnIndex{n, i});
    }
  }
}

TEST_CASE("codes outside the bounded image unpair to none") {
  PairingScheme p;
  std::set<Nat> image;
  for (Nat n = 0; n <= 50; ++n) {
    for (Nat i = 0; i <= 50; ++i) image.insert(p.pair(n, i));
  }
  Nat misses = 0;
  for (Nat code = 0; code <= 50 * 50 * 50; code += 97) {
    const auto r = p.unpair_within(code, 50, 50);
    if (image.count(code)) {
      CHECK(r.has_value());
    } else {
      CHECK_FALSE(r.has_value());
      ++misses;
    }
  }
  CHECK(misses > 0);
}

TEST_CASE("column census k <= 30") {
  PairingScheme p;
  for (Nat k = 1; k <= 30; ++k) {
    Nat count = 0;
    for (Nat n = 0; n < k; ++n) {
      for (Nat i = 0; i < n * n + 1; ++i) {
        if (p.pair(n, i) < k * k * k) ++count;
      }
    }
    CHECK(count <= k * k * k);
  }
}

TEST_CASE("column_code recognizes exactly the coding columns") {
  PairingScheme p;
  for (Nat n = 0; n <= 12; ++n) {
    for (Nat i = 0; i <= 200; ++i) {
      const auto r = p.column_code(p.pair(n, i));
      CHECK(r.has_value() == (i < n * n + 1));
    }
  }
  Nat ceil = 0;
  for (Nat n = 0; n <= 6; ++n) {
    for (Nat i = 0; i < n * n + 1; ++i) ceil = std::max(ceil, p.pair(n, i));
  }
  CHECK(p.column_ceiling(6) == ceil);
}

TEST_CASE("column ceilings do not depend on query order") {
  PairingScheme fresh_order, reference;
  CHECK(fresh_order.column_ceiling(5) == reference.column_ceiling(5));
  for (Nat n = 0; n <= 5; ++n) {
    Nat ceil = 0;
    for (Nat m = 0; m <= n; ++m) ceil = std::max(ceil, reference.pair(m, m * m));
    CHECK(fresh_order.column_ceiling(n) == ceil);
  }
}
