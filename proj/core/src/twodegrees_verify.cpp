#include <algorithm>
#include <map>
#include <set>

#include "sepclass/twodegrees.hpp"

namespace sepclass::twodegrees {

namespace {

Counterexample at(Nat s, std::string actor, Nat x, std::string detail) {
  return {s, std::move(actor), static_cast<Pos>(x), std::move(detail)};
}

std::string axiom_name(const Axiom& ax) {
  return "R_" + std::to_string(ax.e) + "/m=" + std::to_string(ax.m);
}

// Straight reading of the four search conditions, γ taken from {0} ∪ uses.
std::optional<Choice> least_witness(const OracleProgram& phi, const StageSet& w, const StageSet& b,
                                    Nat e, Nat m, Nat s) {
  if (phi.empty()) return std::nullopt;
  std::set<Nat> gammas{0};
  for (Nat g : phi.uses()) gammas.insert(g);
  Nat floor = 0;
  for (Nat n = 0; n <= std::max(e, m); ++n) {
    for (Nat i = 0; i < n * n + 1; ++i) floor = std::max(floor, pair(n, i));
  }
  for (Nat g : gammas) {
    const auto oracle = w.characteristic(Stage{s}, g);
    // Inputs below the first divergence are exactly the x with Φ↓ on [0, x].
    Nat converges_below = 0;
    while (converges_below <= s && phi.evaluate(oracle, converges_below, s).halted) ++converges_below;
    for (Nat x = floor + 1; x <= s && x < converges_below; ++x) {
      if (!b.contains_at(x, Stage{s}) && !phi.evaluate(oracle, x, s).output) return Choice{x, g};
    }
  }
  return std::nullopt;
}

bool live_at(const Axiom& ax, Nat s) {
  return ax.created_at <= s && (!ax.ended_at || *ax.ended_at > s);
}

}  // namespace

VerificationReport verify(const Scenario& sc, const Trace& tr) {
  VerificationReport report;
  report.construction = "twodegrees";
  Verdict disjoint{"disjointness", "A n B = 0"};
  Verdict pstrat{"p-strategy", "P_n fires once when n enters C, at the least i with <n,i> not in A_s and not blocked"};
  Verdict axioms{"axiom-lifecycle", "m in V_e^{W_e|gamma}[s] with x > <n,i> (n <= max{e,m}, i < n^2+1), x not in B_s, Phi_e^{W_e|gamma}(x)[s] = 0"};
  Verdict promote{"promotion", "m enters K with the axiom's prefix intact => x enumerated into A"};
  Verdict blocks{"block-soundness", "x blocked at t iff a live axiom with witness x has W_e|gamma[t] = W_e|gamma at creation"};
  Verdict bcensus{"block-census", "#{i < n^2+1 : <n,i> in A_s or blocked at s} <= n^2"};
  Verdict ccensus{"cube-census", "|A_s n k^3| <= k^2, |B_s n k^3| <= k"};
  Verdict cfromb{"c-from-b", "n in C iff some <n,i> in B with i <= n^2+1"};
  Verdict bfromc{"b-from-c", "n in C: wait for <n,i> in B, then <n,j> in B iff i = j"};

  const Nat h = sc.horizon;
  const Stage hs{h};

  for (const auto& e : tr.a.events()) {
    if (tr.b.contains_at(e.element, hs)) disjoint.fail(at(e.stage, "A", e.element, "also in B"));
  }

  // P_n
  std::map<Nat, Firing> fired;
  for (const auto& f : tr.firings) {
    const std::string who = "P_" + std::to_string(f.n);
    if (!fired.emplace(f.n, f).second) {
      pstrat.fail(at(f.stage, who, f.n, "fired twice"));
      continue;
    }
    const auto entry = sc.c.entry_stage(f.n);
    if (!entry || *entry != f.stage) pstrat.fail(at(f.stage, who, f.n, "fired away from C's entry stage"));
    if (f.i >= f.n * f.n + 1) pstrat.fail(at(f.stage, who, pair(f.n, f.i), "index i >= n^2+1"));
    const Nat code = pair(f.n, f.i);
    if (tr.b.entry_stage(code) != std::optional<Nat>{f.stage}) {
      pstrat.fail(at(f.stage, who, code, "coded element not enumerated into B at the firing stage"));
    }
    const auto eligible = [&](Nat j) {
      const Nat cj = pair(f.n, j);
      if (tr.a.contains_at(cj, Stage{f.stage})) return false;
      const auto& bl = f.stage < tr.blocks.size() ? tr.blocks[f.stage] : std::vector<Block>{};
      return std::none_of(bl.begin(), bl.end(), [&](const Block& b) { return b.x == cj; });
    };
    if (!eligible(f.i)) pstrat.fail(at(f.stage, who, code, "coded element in A or blocked"));
    for (Nat j = 0; j < f.i; ++j) {
      if (eligible(j)) pstrat.fail(at(f.stage, who, pair(f.n, j), "a smaller index was eligible"));
    }
  }
  for (const auto& e : sc.c.events()) {
    if (e.stage >= 1 && e.stage <= h && !fired.count(e.element)) {
      pstrat.fail(at(e.stage, "P_" + std::to_string(e.element), e.element, "n entered C but P_n never fired"));
    }
  }
  std::set<Nat> coded;
  for (const auto& [n, f] : fired) coded.insert(pair(n, f.i));
  for (const auto& e : tr.b.events()) {
    if (!coded.count(e.element)) pstrat.fail(at(e.stage, "B", e.element, "B-element not put there by a P strategy"));
  }

  // Axioms, replayed stage by stage.
  std::set<Nat> promoted_witnesses;
  for (std::size_t idx = 0; idx < tr.axioms.size(); ++idx) {
    const auto& ax = tr.axioms[idx];
    const std::string who = axiom_name(ax);
    if (ax.e >= sc.w.size()) {
      axioms.fail(at(ax.created_at, who, ax.x, "no such requirement"));
      continue;
    }
    const auto& w = sc.w[ax.e];
    const auto& phi = sc.phi[ax.e];
    const Nat c = ax.created_at;
    if (ax.m > c) axioms.fail(at(c, who, ax.x, "m above the stage"));
    if (ax.x > c) axioms.fail(at(c, who, ax.x, "witness above the stage"));
    if (ax.x <= default_pairing().column_ceiling(std::max(ax.e, ax.m))) {
      axioms.fail(at(c, who, ax.x, "witness inside a small column"));
    }
    if (ax.prefix != w.characteristic(Stage{c}, ax.gamma)) axioms.fail(at(c, who, ax.x, "prefix is not W_e|gamma at creation"));
    if (tr.b.contains_at(ax.x, Stage{c})) axioms.fail(at(c, who, ax.x, "witness in B at creation"));
    for (Nat y = 0; y <= ax.x; ++y) {
      const auto ev = phi.evaluate(ax.prefix, y, c);
      if (!ev.halted) {
        axioms.fail(at(c, who, y, "Phi diverges below the witness"));
        break;
      }
      if (y == ax.x && ev.output) axioms.fail(at(c, who, ax.x, "Phi answers 1 at the witness"));
    }
    if (sc.k.contains_at(ax.m, Stage{c})) axioms.fail(at(c, who, ax.m, "created with m already in K"));

    const Nat end = ax.ended_at.value_or(h + 1);
    for (Nat t = c; t < end && t <= h; ++t) {
      if (!prefix_intact(ax, w, t)) {
        axioms.fail(at(t, who, ax.x, "live with a changed prefix"));
        break;
      }
    }
    switch (ax.status) {
      case AxiomStatus::Live:
        if (ax.ended_at) axioms.fail(at(*ax.ended_at, who, ax.x, "live axiom has an end stage"));
        if (sc.k.contains_at(ax.m, hs)) promote.fail(at(h, who, ax.m, "m in K but the axiom was never promoted"));
        break;
      case AxiomStatus::Invalidated:
        if (!ax.ended_at || prefix_intact(ax, w, *ax.ended_at)) {
          axioms.fail(at(end, who, ax.x, "invalidated with the prefix intact"));
        }
        if (sc.k.contains_at(ax.m, Stage{end - 1})) {
          promote.fail(at(end, who, ax.m, "m entered K while the axiom was live"));
        }
        break;
      case AxiomStatus::Promoted:
        if (!ax.ended_at || !prefix_intact(ax, w, *ax.ended_at)) {
          promote.fail(at(end, who, ax.x, "promoted with a changed prefix"));
        }
        if (sc.k.entry_stage(ax.m) != ax.ended_at) promote.fail(at(end, who, ax.m, "promoted away from K's entry stage"));
        if (!tr.a.contains_at(ax.x, Stage{end})) promote.fail(at(end, who, ax.x, "promoted witness missing from A"));
        promoted_witnesses.insert(ax.x);
        break;
    }
  }
  for (const auto& e : tr.a.events()) {
    if (!promoted_witnesses.count(e.element)) promote.fail(at(e.stage, "A", e.element, "A-element without a promoted axiom"));
  }

  // Uniqueness and eagerness: every (e, m) without a live axiom that could
  // have found a witness did so at that stage.
  std::map<std::pair<Nat, Nat>, std::vector<std::size_t>> by_req;
  for (std::size_t idx = 0; idx < tr.axioms.size(); ++idx) {
    by_req[{tr.axioms[idx].e, tr.axioms[idx].m}].push_back(idx);
  }
  for (const auto& [req, list] : by_req) {
    for (std::size_t j = 1; j < list.size(); ++j) {
      const auto& prev = tr.axioms[list[j - 1]];
      const auto& cur = tr.axioms[list[j]];
      if (!prev.ended_at || *prev.ended_at > cur.created_at) {
        axioms.fail(at(cur.created_at, axiom_name(cur), cur.x, "two live axioms for one (e, m)"));
      }
      if (prev.status == AxiomStatus::Promoted) {
        axioms.fail(at(cur.created_at, axiom_name(cur), cur.x, "axiom made after promotion"));
      }
    }
  }
  // B as the search saw it at stage s: entries before s.
  StageSet b_before(h);
  std::size_t bi = 0;
  std::vector<Entry> b_events = tr.b.events();
  std::sort(b_events.begin(), b_events.end(), [](const Entry& l, const Entry& r) { return l.stage < r.stage; });
  for (Nat s = 1; s <= h; ++s) {
    for (; bi < b_events.size() && b_events[bi].stage < s; ++bi) {
      b_before.enumerate(b_events[bi].element, Stage{b_events[bi].stage});
    }
    for (Nat e = 0; e < sc.w.size() && e <= s; ++e) {
      for (Nat m = 0; m <= s; ++m) {
        if (default_pairing().column_ceiling(std::max(e, m)) >= s) break;
        if (sc.k.contains_at(m, Stage{s})) continue;
        const auto it = by_req.find({e, m});
        const Axiom* made = nullptr;
        bool blocked_req = false;
        if (it != by_req.end()) {
          for (auto idx : it->second) {
            const auto& ax = tr.axioms[idx];
            if (ax.created_at == s) made = &ax;
            else if (ax.created_at < s && (live_at(ax, s) || ax.status == AxiomStatus::Promoted)) blocked_req = true;
          }
        }
        if (blocked_req) continue;
        const auto want = least_witness(sc.phi[e], sc.w[e], b_before, e, m, s);
        if (want && !made) {
          axioms.fail(at(s, "R_" + std::to_string(e) + "/m=" + std::to_string(m), want->x, "witness available but no axiom made"));
        } else if (!want && made) {
          axioms.fail(at(s, axiom_name(*made), made->x, "axiom made without a valid witness"));
        } else if (want && (want->x != made->x || want->gamma != made->gamma)) {
          axioms.fail(at(s, axiom_name(*made), made->x, "not the least (gamma, x); expected x = " + std::to_string(want->x)));
        }
      }
    }
  }

  // Blocks
  for (Nat s = 1; s <= h; ++s) {
    std::set<std::pair<Nat, std::size_t>> want, got;
    for (std::size_t idx = 0; idx < tr.axioms.size(); ++idx) {
      const auto& ax = tr.axioms[idx];
      if (live_at(ax, s) && ax.e < sc.w.size() && prefix_intact(ax, sc.w[ax.e], s)) want.insert({ax.x, idx});
    }
    if (s < tr.blocks.size()) {
      for (const auto& b : tr.blocks[s]) got.insert({b.x, b.axiom});
    }
    for (const auto& [x, idx] : got) {
      if (!want.count({x, idx})) blocks.fail(at(s, "blocks", x, "blocked without a live intact axiom"));
    }
    for (const auto& [x, idx] : want) {
      if (!got.count({x, idx})) blocks.fail(at(s, "blocks", x, "live intact axiom's witness not blocked"));
    }
  }

  // Censuses
  for (Nat s = 0; s <= h; ++s) {
    for (Nat n = 0; n <= sc.columns; ++n) {
      const Nat count = block_census(tr, n, s);
      if (count > n * n) {
        bcensus.fail(at(s, "column " + std::to_string(n), n, std::to_string(count) + " > n^2"));
      }
    }
  }
  // Both counts only grow, so a check per entry stage covers every stage.
  std::set<Nat> entry_stages{h};
  for (const auto& e : tr.a.events()) entry_stages.insert(e.stage);
  for (const auto& e : tr.b.events()) entry_stages.insert(e.stage);
  for (Nat s : entry_stages) {
    for (Nat k = 0; k <= sc.columns; ++k) {
      const auto cc = cube_census(tr, k, s);
      if (cc.a > k * k) ccensus.fail(at(s, "A", k, "|A n k^3| = " + std::to_string(cc.a) + " > k^2"));
      if (cc.b > k) ccensus.fail(at(s, "B", k, "|B n k^3| = " + std::to_string(cc.b) + " > k"));
    }
  }

  // Round trips
  const Nat n_bound = std::max<Nat>(sc.columns, sc.c.element_bound());
  for (Nat n = 0; n < n_bound; ++n) {
    const auto d = decode_c_from_b(tr.b, n, h);
    if (d.bit != sc.c.contains_at(n, hs)) cfromb.fail(at(h, "decoder", n, d.bit ? "decoded 1, n not in C" : "decoded 0, n in C"));
  }
  const Nat q_bound = std::max(tr.b.element_bound(), default_pairing().column_ceiling(sc.columns) + 1);
  for (Nat q = 0; q < q_bound; ++q) {
    const auto d = decode_b_from_c(sc.c, tr.b, q, h);
    const bool in_b = tr.b.contains_at(q, hs);
    if (d == BDecode::NotSettled) {
      bfromc.fail(at(h, "decoder", q, "column of an element of C has no B-witness"));
    } else if ((d == BDecode::In) != in_b) {
      bfromc.fail(at(h, "decoder", q, in_b ? "decoded 0, query in B" : "decoded 1, query not in B"));
    }
  }
  bfromc.details.push_back("queries checked: " + std::to_string(q_bound));

  report.verdicts = {disjoint, pstrat, axioms, promote, blocks, bcensus, ccensus, cfromb, bfromc};
  return report;
}

}  // namespace sepclass::twodegrees
