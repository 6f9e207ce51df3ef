#include <algorithm>
#include <map>
#include <optional>
#include <random>

#include "sepclass/corpus.hpp"

namespace sepclass::corpus {

using nosupermax::Attempt;
using nosupermax::SpeedupCertificate;

const char* to_string(NosupermaxAdversary kind) {
  switch (kind) {
    case NosupermaxAdversary::Empty: return "empty";
    case NosupermaxAdversary::Random: return "random";
    case NosupermaxAdversary::AbsorbA: return "absorb-a";
    case NosupermaxAdversary::AbsorbB: return "absorb-b";
    case NosupermaxAdversary::TwoPhase: return "two-phase";
  }
  return "?";
}

namespace {

struct Plan {
  Nat horizon = 0;
  Nat threshold = 0, period = 1;
  bool absorb_a = true;  // policy against X_1
  // Background fates below the threshold, by stage.
  std::multimap<Nat, std::pair<Nat, bool>> background;  // stage -> (element, into A)
  // Second phase: mirror policy against X_2 on the sped-up timeline.
  std::optional<SpeedupCertificate> cert;
  std::vector<Pos> settled;  // x_{-1..ell} of attempt 1 at the settling stage
  Nat threshold2 = 0, period2 = 1;
};

bool bullets_online(const Attempt& a1, const Plan& pl, Nat t) {
  const auto& c = *pl.cert;
  const auto& bx = a1.boundary().x;
  for (std::size_t i = 0; i < pl.settled.size(); ++i) {
    if (i >= bx.size() || bx[i] != pl.settled[i]) return false;
  }
  const auto xk = a1.boundary().entry(c.k);
  if (!xk || *xk <= static_cast<Pos>(t)) return false;
  const bool in = nosupermax::in_type(c.k);
  for (Pos py = pl.settled.back() + 1; py <= static_cast<Pos>(t); ++py) {
    const Nat y = static_cast<Nat>(py);
    const bool ok = in ? (a1.in_a(y) || !a1.in_x(y)) : (a1.in_x(y) || a1.in_b(y));
    if (!ok) return false;
  }
  return true;
}

std::pair<StageSet, StageSet> generate(const Plan& pl) {
  StageSet a(pl.horizon), b(pl.horizon);
  Attempt a1(1, -1, pl.horizon + 1, {}, {});
  std::optional<Attempt> a2;
  std::vector<Nat> pend_a, pend_b;
  const bool in2 = pl.cert ? !nosupermax::in_type(pl.cert->k) : false;
  for (Nat s = 0; s < pl.horizon; ++s) {
    const Nat st = s + 1;
    std::vector<Nat> na, nb;
    auto [lo, hi] = pl.background.equal_range(st);
    for (auto it = lo; it != hi; ++it) (it->second.second ? na : nb).push_back(it->second.first);
    auto open = [&](Nat y) { return !a.contains(y) && !b.contains(y); };
    if (st % pl.period == 0) {
      for (Nat y = pl.threshold; y < s; ++y) {
        if (open(y) && a1.in_x(y) == pl.absorb_a) (pl.absorb_a ? na : nb).push_back(y);
      }
    }
    if (a2 && st % pl.period2 == 0) {
      // Against X_2 only where X_1 agrees, so X_1 sees no W entry.
      for (Nat y = pl.threshold2; y < a2->stage(); ++y) {
        if (open(y) && a2->in_x(y) == in2 && a1.in_x(y) == in2) (in2 ? na : nb).push_back(y);
      }
    }
    std::vector<Nat> fa, fb;
    for (Nat y : na) {
      if (a.enumerate(y, Stage{st})) fa.push_back(y);
    }
    for (Nat y : nb) {
      if (!a.contains(y) && b.enumerate(y, Stage{st})) fb.push_back(y);
    }
    a1.step(fa, fb);
    if (!pl.cert || st < pl.cert->settling_stage) continue;
    pend_a.insert(pend_a.end(), fa.begin(), fa.end());
    pend_b.insert(pend_b.end(), fb.begin(), fb.end());
    const Nat t = a2 ? a2->stage() + 1 : 0;
    if (!bullets_online(a1, pl, t)) continue;
    if (!a2) {
      const auto sa = a.snapshot(Stage{st}), sb = b.snapshot(Stage{st});
      a2.emplace(2, pl.settled.back(), pl.horizon + 1, std::vector<Nat>(sa.begin(), sa.end()),
                 std::vector<Nat>(sb.begin(), sb.end()));
    } else {
      a2->step(pend_a, pend_b);
    }
    pend_a.clear();
    pend_b.clear();
  }
  return {std::move(a), std::move(b)};
}

Plan absorb_plan(std::mt19937_64& rng, Nat horizon, bool absorb_a) {
  Plan pl;
  pl.horizon = horizon;
  pl.absorb_a = absorb_a;
  pl.threshold = std::uniform_int_distribution<Nat>(20, 60)(rng);
  pl.period = std::uniform_int_distribution<Nat>(6, 15)(rng);
  std::uniform_int_distribution<int> fate(0, 2);
  std::uniform_int_distribution<Nat> when(1, std::max<Nat>(1, std::min(horizon, pl.threshold / 2 + 1)));
  for (Nat y = 0; y < pl.threshold; ++y) {
    const int f = fate(rng);
    if (f < 2) pl.background.emplace(when(rng), std::make_pair(y, f == 0));
  }
  return pl;
}

nosupermax::Scenario to_scenario(Nat horizon, std::pair<StageSet, StageSet> sets) {
  nosupermax::Scenario sc;
  sc.horizon = horizon;
  sc.a = std::move(sets.first);
  sc.b = std::move(sets.second);
  return sc;
}

// Certificates from detect_outcome, kept only while they validate.
void certify(nosupermax::Scenario& sc) {
  sc.certificates.clear();
  for (int index = 1; index <= 2; ++index) {
    sc.auto_certify = false;
    const auto tr = nosupermax::run(sc);
    if (tr.attempts.size() < static_cast<std::size_t>(index)) break;
    const auto& at = tr.attempts[index - 1];
    const auto w = nosupermax::window_for(sc, at.timeline.horizon());
    const auto cert = tr.outcomes[index - 1].proposal(index);
    if (!nosupermax::apply_speedup(at, sc.a, sc.b, cert, w).accepted) break;
    sc.certificates.push_back(cert);
  }
}

}  // namespace

nosupermax::Scenario nosupermax_scenario(NosupermaxAdversary kind, std::uint64_t seed,
                                         Nat horizon) {
  std::mt19937_64 rng(seed);
  switch (kind) {
    case NosupermaxAdversary::Empty:
      return to_scenario(horizon, {StageSet(horizon), StageSet(horizon)});
    case NosupermaxAdversary::Random: {
      StageSet a(horizon), b(horizon);
      std::uniform_int_distribution<int> fate(0, 9);
      std::uniform_int_distribution<Nat> lag(0, 40);
      for (Nat y = 0; y < horizon; ++y) {
        const int f = fate(rng);
        if (f >= 6) continue;
        const Nat st = std::min(horizon, std::max<Nat>(1, y + lag(rng)));
        (f < 3 ? a : b).enumerate(y, Stage{st});
      }
      auto sc = to_scenario(horizon, {std::move(a), std::move(b)});
      certify(sc);
      return sc;
    }
    case NosupermaxAdversary::AbsorbA:
    case NosupermaxAdversary::AbsorbB: {
      auto sc = to_scenario(
          horizon, generate(absorb_plan(rng, horizon, kind == NosupermaxAdversary::AbsorbA)));
      certify(sc);
      return sc;
    }
    case NosupermaxAdversary::TwoPhase: {
      Plan pl = absorb_plan(rng, horizon, std::bernoulli_distribution(0.5)(rng));
      auto first = to_scenario(horizon, generate(pl));
      certify(first);
      if (first.certificates.empty()) return first;
      pl.cert = first.certificates.front();
      const auto at = nosupermax::run_attempt(1, -1, first.a, first.b,
                                              nosupermax::Timeline::identity(horizon));
      pl.settled = nosupermax::boundary_at(at, pl.cert->settling_stage).x;
      pl.settled.resize(static_cast<std::size_t>(pl.cert->ell + 2));
      pl.threshold2 = static_cast<Nat>(pl.settled.back()) +
                      std::uniform_int_distribution<Nat>(10, 30)(rng);
      pl.period2 = std::uniform_int_distribution<Nat>(6, 15)(rng);
      auto sc = to_scenario(horizon, generate(pl));
      certify(sc);
      return sc;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown adversary");
}

std::vector<nosupermax::Scenario> nosupermax_corpus(std::size_t count, Nat horizon,
                                                    std::uint64_t seed) {
  static constexpr NosupermaxAdversary kCycle[] = {
      NosupermaxAdversary::Random, NosupermaxAdversary::AbsorbA, NosupermaxAdversary::AbsorbB,
      NosupermaxAdversary::TwoPhase, NosupermaxAdversary::Empty};
  std::vector<nosupermax::Scenario> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(nosupermax_scenario(kCycle[i % 5], seed + i, horizon));
  }
  return out;
}

}  // namespace sepclass::corpus
