#include <random>

#include "sepclass/corpus.hpp"

namespace sepclass::corpus {

ShiftOperators shift_operators(Nat d, Nat c, Nat domain) {
  OracleProgram g, dl;
  std::vector<Nat> f;
  for (Nat x = 0; x < domain; ++x) {
    f.push_back(x + d + 1 + c);
    if (x < d) {
      g.add_rule({Guard(), x, false, 1, 0});
    } else {
      for (bool bit : {false, true}) g.add_rule({Guard({{x - d, bit}}), x, bit, x - d + 1, 0});
    }
    for (bool bit : {false, true}) dl.add_rule({Guard({{x + d, bit}}), x, bit, x + d + 1, 0});
  }
  UseBound bound(f);
  return {UseBoundedOperator(g, bound), UseBoundedOperator(dl, bound), bound};
}

namespace {

constexpr Nat kDomain = 64;
constexpr Nat kHorizon = 40;

struct Layout {
  std::vector<Nat> a;  // B is a + d
  Nat d = 2, c = 0;
};

// Stretches A = [q, q+d), B = [q+d, q+2d), repeated j times, separated by
// holes. The hole before each stretch starts a new block.
Layout case2_layout(std::mt19937_64& rng) {
  Layout l;
  l.d = 2 + rng() % 2;
  l.c = rng() % (l.d - 1);
  Nat p = 1 + rng() % 2;
  for (int stretch = 0; stretch < 9; ++stretch) {
    const Nat j = 1 + rng() % 2;
    if (p + 2 * l.d * j + 1 >= kDomain * 3 / 4) break;
    for (Nat r = 0; r < j; ++r) {
      for (Nat x = 0; x < l.d; ++x) l.a.push_back(p + 2 * l.d * r + x);
    }
    p += 2 * l.d * j + 1 + rng() % 2;
  }
  return l;
}

// Sparse singletons: A ∪ (A + d) never covers an interval of length f(x) - x.
Layout case1_layout(std::mt19937_64& rng) {
  Layout l;
  l.d = 1 + rng() % 3;
  l.c = 1 + rng() % 2;
  for (Nat x = rng() % 3; x + l.d < kDomain - 4; x += 1 + rng() % 4) {
    bool ok = true;
    for (Nat y : l.a) ok = ok && y + l.d != x && x + l.d != y;
    if (ok && rng() % 3 != 0) l.a.push_back(x);
  }
  return l;
}

upclosure::Scenario build(upclosure::CaseTag::Kind kind, const Layout& l, std::mt19937_64& rng) {
  upclosure::Scenario sc;
  sc.horizon = kHorizon;
  sc.domain = kDomain;
  sc.a = StageSet(kHorizon);
  sc.b = StageSet(kHorizon);
  sc.c = StageSet(kHorizon);
  const Nat settle = kHorizon - 5;
  for (Nat x : l.a) {
    const Nat t = 1 + rng() % settle;
    sc.a.enumerate(x, Stage{t});
    sc.b.enumerate(x + l.d, Stage{std::min(settle, t + rng() % 2)});
  }
  auto ops = shift_operators(l.d, l.c, kDomain);
  sc.gamma = std::move(ops.gamma);
  sc.delta = std::move(ops.delta);
  sc.f = std::move(ops.f);
  const Stage h{kHorizon};
  if (kind == upclosure::CaseTag::Kind::Case1) {
    Nat k = 0;
    for (Nat x : upclosure::covered_points(sc.a, sc.b, sc.f, h, kDomain)) k = x + 1;
    sc.declared = upclosure::CaseTag::case1(k);
    const Nat step = l.d + 1 + l.c;
    sc.blocks = std::min<Nat>(8, (kDomain - 1 - k) / step);
  } else {
    sc.declared = upclosure::CaseTag::case2();
    const auto ms = upclosure::m_sequence(sc.declared, sc.a, sc.b, h, sc.f, 9);
    sc.blocks = std::min<Nat>(8, ms.seq.blocks());
  }
  for (Nat n = 0; n < sc.blocks; ++n) {
    if (rng() % 2) sc.c.enumerate(n, Stage{1 + rng() % settle});
  }
  return sc;
}

}  // namespace

upclosure::Scenario upclosure_scenario(upclosure::CaseTag::Kind kind, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    const auto layout = kind == upclosure::CaseTag::Kind::Case1 ? case1_layout(rng) : case2_layout(rng);
    auto sc = build(kind, layout, rng);
    if (sc.blocks == 0 || !upclosure::audit_hypotheses(sc).empty()) continue;
    if (!upclosure::classify_case(sc.a, sc.b, sc.f, sc.horizon, sc.domain, sc.declared)) continue;
    return sc;
  }
}

std::vector<upclosure::Scenario> upclosure_corpus(std::size_t per_case, std::uint64_t seed) {
  std::vector<upclosure::Scenario> out;
  for (std::size_t i = 0; i < per_case; ++i) {
    out.push_back(upclosure_scenario(upclosure::CaseTag::Kind::Case1, seed + 2 * i));
    out.push_back(upclosure_scenario(upclosure::CaseTag::Kind::Case2, seed + 2 * i + 1));
  }
  return out;
}

}  // namespace sepclass::corpus
