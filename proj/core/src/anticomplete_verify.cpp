#include <algorithm>
#include <map>

#include "sepclass/anticomplete.hpp"

namespace sepclass::anticomplete {
namespace {

constexpr const char* kWttPromise = "wtt-promise";
constexpr const char* kRestraint = "restraint-discipline";
constexpr const char* kDisjoint = "disjointness";
constexpr const char* kEntryBound = "entry-below-stage";
constexpr const char* kNPreservation = "n-preservation";
constexpr const char* kSigmaValid = "sigma-validity";
constexpr const char* kDivergence = "sigma-divergence";
constexpr const char* kFreshness = "claim-freshness";
constexpr const char* kCensus = "d-enumeration-census";

struct Act {
  std::size_t event_index = 0;
  const Event* ev = nullptr;
};

}  // namespace

RebuiltSets rebuild_sets(const Trace& trace) {
  RebuiltSets out{StageSet(trace.horizon), StageSet(trace.horizon), StageSet(trace.horizon)};
  for (const auto& ev : trace.events) {
    if (ev.kind != Event::Kind::RAct) continue;
    const Stage stamp{ev.stage + 1};
    for (Nat x : ev.into_a) out.a.enumerate(x, stamp);
    for (Nat x : ev.into_b) out.b.enumerate(x, stamp);
    out.d.enumerate(ev.n, stamp);
  }
  return out;
}

VerificationReport verify(const Scenario& scenario, const Trace& trace) {
  VerificationReport report;
  report.construction = "anticomplete";
  Verdict wtt{kWttPromise, "b in B[s+1]\\B[s] => exists a < b, a in A[s+1]\\A[s] (B <=wtt A)"};
  Verdict restraint{kRestraint, "entries by a strategy >= its last initialization stage"};
  Verdict disjoint{kDisjoint, "A[s] n B[s] = 0"};
  Verdict bound{kEntryBound, "x in (A u B)[s+1]\\(A u B)[s] => x < s"};
  Verdict npres{kNPreservation, "N_k acts at s > k, never reinitialized => s not in A u B"};
  Verdict sigma_ok{kSigmaValid, "Phi^sigma|(n+1)[s] = D_s|(n+1), sigma respects A_s/B_s, m least, copy on [m,|sigma|)"};
  Verdict diverge{kDivergence, "i < j: sigma_j not extending sigma_i, sigma_j = sigma_i on [m_i, |sigma_i|)"};
  Verdict fresh{kFreshness, "claimed n strictly increasing, each n enters D once"};
  Verdict census{kCensus, "R_e initialized finitely often => finitely many D-entries"};
  census.informational = true;
  census.caveat =
      "finite horizon: counts after the last initialization are reported, the limit is not certified";

  // Rebuild A, B, D with duplicate and overlap detection.
  StageSet a(trace.horizon + 1), b(trace.horizon + 1), d(trace.horizon + 1);
  std::map<Nat, Nat> min_a_at_stage;
  for (const auto& ev : trace.events) {
    if (ev.kind != Event::Kind::RAct) continue;
    const Nat stamp = ev.stage + 1;
    const auto who = StrategyRef::at(ev.position).name();
    for (Nat x : ev.into_a) {
      if (b.contains(x)) disjoint.fail({stamp, who, static_cast<Pos>(x), "enters A while in B"});
      if (!a.enumerate(x, Stage{stamp})) {
        disjoint.fail({stamp, who, static_cast<Pos>(x), "enumerated into A twice"});
      }
      auto [it, ins] = min_a_at_stage.emplace(stamp, x);
      if (!ins) it->second = std::min(it->second, x);
    }
    for (Nat x : ev.into_b) {
      if (a.contains(x)) disjoint.fail({stamp, who, static_cast<Pos>(x), "enters B while in A"});
      if (!b.enumerate(x, Stage{stamp})) {
        disjoint.fail({stamp, who, static_cast<Pos>(x), "enumerated into B twice"});
      }
    }
    if (!d.enumerate(ev.n, Stage{stamp})) {
      fresh.fail({stamp, who, static_cast<Pos>(ev.n), "number enumerated into D twice"});
    }
  }

  // Replay initialization history to recover each strategy's live restraint.
  std::map<Nat, Nat> live_restraint;  // position -> restraint (absent = 0)
  std::map<Nat, Nat> last_init_stage;
  std::map<Nat, Nat> claims;  // position -> current claim
  std::map<Nat, std::vector<Act>> acts_by_r;
  std::map<Nat, std::size_t> last_init_event;  // position -> index of latest init covering it
  std::optional<Nat> last_claim;
  Nat max_position = 0;
  for (const auto& ev : trace.events) max_position = std::max(max_position, ev.position);

  auto restraint_of = [&](Nat p) {
    auto it = live_restraint.find(p);
    return it == live_restraint.end() ? Nat{0} : it->second;
  };

  for (std::size_t idx = 0; idx < trace.events.size(); ++idx) {
    const auto& ev = trace.events[idx];
    const auto ref = StrategyRef::at(ev.position);
    const auto who = ref.name();
    switch (ev.kind) {
      case Event::Kind::Init:
        for (Nat q = ev.position; q <= max_position; ++q) {
          live_restraint[q] = ev.restraint;
          last_init_stage[q] = ev.stage;
          last_init_event[q] = idx;
          claims.erase(q);
        }
        if (ev.restraint != ev.stage + 1) {
          restraint.fail({ev.stage, "init", static_cast<Pos>(ev.position),
                          "initialization restraint is not the stage being built"});
        }
        break;
      case Event::Kind::Claim:
        if (ref.kind != StrategyRef::Kind::R) {
          fresh.fail({ev.stage, who, static_cast<Pos>(ev.n), "claim by a non-R strategy"});
        }
        if (last_claim && ev.n <= *last_claim) {
          fresh.fail({ev.stage, who, static_cast<Pos>(ev.n), "claimed number not larger than an earlier claim"});
        }
        if (ev.n <= ev.stage) {
          fresh.fail({ev.stage, who, static_cast<Pos>(ev.n), "claimed number not above the stage"});
        }
        last_claim = ev.n;
        claims[ev.position] = ev.n;
        break;
      case Event::Kind::NAct:
        if (ref.kind != StrategyRef::Kind::N || ev.stage <= ref.index ||
            ev.restraint != ev.stage + 1 || ev.position >= ev.stage) {
          npres.fail({ev.stage, who, static_cast<Pos>(ev.stage), "N-strategy acted out of turn"});
        }
        break;
      case Event::Kind::RAct: {
        if (ref.kind != StrategyRef::Kind::R || ev.position >= ev.stage) {
          sigma_ok.fail({ev.stage, who, -1, "action by a strategy not run at this stage"});
          break;
        }
        const Nat r = restraint_of(ev.position);
        const Nat stamp = ev.stage + 1;
        for (const auto* list : {&ev.into_a, &ev.into_b}) {
          for (Nat x : *list) {
            if (x < r) restraint.fail({stamp, who, static_cast<Pos>(x), "enumerated below restraint " + std::to_string(r)});
            if (x >= ev.stage) bound.fail({stamp, who, static_cast<Pos>(x), "entry not below stage"});
          }
        }
        if (ev.restraint != r) {
          restraint.fail({ev.stage, who, static_cast<Pos>(ev.restraint), "recorded restraint disagrees with initialization history"});
        }
        for (Nat x : ev.into_b) {
          auto it = min_a_at_stage.find(stamp);
          if (it == min_a_at_stage.end() || it->second >= x) {
            wtt.fail({stamp, who, static_cast<Pos>(x), "B-entry without a smaller same-stage A-entry"});
          }
        }
        auto claim = claims.find(ev.position);
        if (claim == claims.end() || claim->second != ev.n) {
          fresh.fail({ev.stage, who, static_cast<Pos>(ev.n), "enumerated a number it had not claimed"});
        }
        claims.erase(ev.position);
        acts_by_r[ev.position].push_back({idx, &ev});

        // Step (2)-(4) replay against the rebuilt stage-s sets.
        const Nat s = ev.stage;
        const StageView view{a, b, d, s};
        if (ev.sigma.size() != s) {
          sigma_ok.fail({s, who, -1, "sigma length differs from the stage"});
          break;
        }
        std::vector<bool> sigma(s);
        for (Nat x = 0; x < s; ++x) sigma[x] = ev.sigma[x] == '1';
        for (Nat x = 0; x < s; ++x) {
          if ((view.in_a(x) && !sigma[x]) || (view.in_b(x) && sigma[x])) {
            sigma_ok.fail({s, who, static_cast<Pos>(x), "sigma inconsistent with A_s/B_s"});
            break;
          }
        }
        const auto& phi = scenario.program(ref.index);
        for (Nat y = 0; y <= ev.n; ++y) {
          const auto res = phi.evaluate(sigma, y, s);
          if (!res.halted || res.output != view.in_d(y)) {
            sigma_ok.fail({s, who, static_cast<Pos>(y), "Phi^sigma disagrees with D_s"});
            break;
          }
        }
        Pos m = -1;
        for (Nat x = r; x < s; ++x) {
          if (sigma[x] && !view.in_a(x)) {
            m = static_cast<Pos>(x);
            break;
          }
        }
        if (m != ev.m) {
          sigma_ok.fail({s, who, ev.m, "m is not the least qualifying position"});
          break;
        }
        std::vector<Nat> want_a, want_b;
        if (m >= 0) {
          for (Nat x = static_cast<Nat>(m); x < s; ++x) {
            if (sigma[x] && !view.in_a(x)) want_a.push_back(x);
            if (!sigma[x] && !view.in_b(x)) want_b.push_back(x);
          }
        }
        if (want_a != ev.into_a || want_b != ev.into_b) {
          sigma_ok.fail({s, who, m, "enumerations differ from copying sigma on [m, |sigma|)"});
        }
        break;
      }
    }
  }

  // N_k preservation: acted at s and never initialized afterwards.
  for (std::size_t idx = 0; idx < trace.events.size(); ++idx) {
    const auto& ev = trace.events[idx];
    if (ev.kind != Event::Kind::NAct) continue;
    auto it = last_init_event.find(ev.position);
    if (it != last_init_event.end() && it->second > idx) continue;
    if (a.contains(ev.stage) || b.contains(ev.stage)) {
      npres.fail({ev.stage, StrategyRef::at(ev.position).name(), static_cast<Pos>(ev.stage),
                  "protected hole enumerated into A u B"});
    }
  }

  // Finite-injury skeleton: for acts i < j of one strategy, sigma_j does not
  // extend sigma_i and copies sigma_i on [m_i, |sigma_i|).
  const Nat window_start = trace.horizon - trace.horizon / 5;
  for (const auto& [pos, acts] : acts_by_r) {
    const auto who = StrategyRef::at(pos).name();
    for (std::size_t i = 0; i < acts.size(); ++i) {
      const auto& si = acts[i].ev->sigma;
      const std::size_t mi = acts[i].ev->m >= 0 ? static_cast<std::size_t>(acts[i].ev->m) : si.size();
      for (std::size_t j = i + 1; j < acts.size(); ++j) {
        const auto& sj = acts[j].ev->sigma;
        if (sj.size() < si.size()) {
          diverge.fail({acts[j].ev->stage, who, -1, "later sigma shorter than earlier"});
          continue;
        }
        if (sj.compare(0, si.size(), si) == 0) {
          diverge.fail({acts[j].ev->stage, who, static_cast<Pos>(acts[i].ev->n),
                        "sigma_j extends sigma_i although n_i is in D"});
        }
        if (sj.compare(mi, si.size() - mi, si, mi, si.size() - mi) != 0) {
          diverge.fail({acts[j].ev->stage, who, static_cast<Pos>(mi),
                        "sigma_j differs from sigma_i at or above m_i"});
        }
      }
    }
    Nat after_init = 0;
    Nat in_window = 0;
    Nat last_stage = 0;
    const auto li = last_init_stage.find(pos);
    for (const auto& act : acts) {
      if (li == last_init_stage.end() || act.ev->stage > li->second) ++after_init;
      if (act.ev->stage >= window_start) ++in_window;
      last_stage = act.ev->stage;
    }
    census.details.push_back(who + ": D-enumerations=" + std::to_string(acts.size()) +
                             " after-last-init=" + std::to_string(after_init) +
                             " in-final-window=" + std::to_string(in_window) +
                             " last-stage=" + std::to_string(last_stage));
  }

  report.verdicts = {wtt, restraint, disjoint, bound, npres, sigma_ok, diverge, fresh, census};
  return report;
}

}  // namespace sepclass::anticomplete
