#include "sepclass/twodegrees.hpp"

#include <algorithm>

namespace sepclass::twodegrees {

const char* to_string(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::Live: return "live";
    case AxiomStatus::Invalidated: return "invalidated";
    case AxiomStatus::Promoted: return "promoted";
  }
  return "?";
}

bool prefix_intact(const Axiom& ax, const StageSet& w, Nat s) {
  return w.characteristic(Stage{s}, ax.gamma) == ax.prefix;
}

std::optional<Choice> search_witness(const OracleProgram& phi, const StageSet& w, const StageSet& b,
                                     Nat e, Nat m, Nat s) {
  const Nat floor = default_pairing().column_ceiling(std::max(e, m));
  if (floor >= s || phi.empty()) return std::nullopt;
  auto gammas = phi.uses();
  if (gammas.empty() || gammas.front() != 0) gammas.insert(gammas.begin(), 0);
  for (Nat g : gammas) {
    const auto oracle = w.characteristic(Stage{s}, g);
    for (Nat y = 0; y <= s; ++y) {
      const auto ev = phi.evaluate(oracle, y, s);
      if (!ev.halted) break;
      if (y > floor && !ev.output && !b.contains_at(y, Stage{s})) return Choice{y, g};
    }
  }
  return std::nullopt;
}

Stepper::Stepper(const Scenario& sc) : sc_(sc) {
  tr_.horizon = sc.horizon;
  tr_.a = StageSet(sc.horizon);
  tr_.b = StageSet(sc.horizon);
  tr_.blocks.emplace_back();
  live_.resize(sc.w.size());
  if (sc.phi.size() != sc.w.size()) {
    throw Error(ErrorKind::Schema, "need one functional per W_e");
  }
}

bool Stepper::blocked(Nat x) const {
  for (const auto& bl : tr_.blocks.back()) {
    if (bl.x == x) return true;
  }
  return false;
}

void Stepper::r_step(Nat e, Nat s) {
  const Stage st{s};
  auto& lv = live_[e];
  if (lv.size() < s + 1) lv.resize(s + 1);
  for (Nat m = 0; m <= s; ++m) {
    // Witnesses sit below s, so nothing above this m can hold or make one.
    if (default_pairing().column_ceiling(std::max(e, m)) >= s) break;
    if (lv[m]) {
      auto& ax = tr_.axioms[*lv[m]];
      if (!prefix_intact(ax, sc_.w[e], s)) {
        ax.status = AxiomStatus::Invalidated;
        ax.ended_at = s;
        lv[m].reset();
      }
    }
    const bool in_k = sc_.k.contains_at(m, st);
    if (lv[m] && in_k) {
      auto& ax = tr_.axioms[*lv[m]];
      if (tr_.b.contains_at(ax.x, st)) {
        throw Error(ErrorKind::HardFault, "paper-asserted impossibility violated: witness " +
                                              std::to_string(ax.x) + " of R_" + std::to_string(e) +
                                              " for m = " + std::to_string(m) + " is in B");
      }
      tr_.a.enumerate(ax.x, st);
      ax.status = AxiomStatus::Promoted;
      ax.ended_at = s;
      lv[m].reset();
      promoted_.insert({e, m});
      continue;
    }
    // A promoted axiom keeps m in V_e; nothing more happens for m.
    if (lv[m] || in_k || promoted_.count({e, m})) continue;
    const auto ch = search_witness(sc_.phi[e], sc_.w[e], tr_.b, e, m, s);
    if (!ch) continue;
    Axiom ax;
    ax.e = e;
    ax.m = m;
    ax.gamma = ch->gamma;
    ax.prefix = sc_.w[e].characteristic(st, ch->gamma);
    ax.x = ch->x;
    ax.created_at = s;
    lv[m] = tr_.axioms.size();
    tr_.axioms.push_back(std::move(ax));
  }
}

void Stepper::record_blocks(Nat s) {
  std::vector<Block> out;
  for (std::size_t e = 0; e < live_.size(); ++e) {
    for (const auto& idx : live_[e]) {
      if (idx) out.push_back({tr_.axioms[*idx].x, *idx});
    }
  }
  std::sort(out.begin(), out.end(), [](const Block& l, const Block& r) {
    return l.x != r.x ? l.x < r.x : l.axiom < r.axiom;
  });
  if (tr_.blocks.size() <= s) tr_.blocks.resize(s + 1);
  tr_.blocks[s] = std::move(out);
}

void Stepper::p_step(Nat n, Nat s) {
  const Stage st{s};
  const Nat width = n * n + 1;
  for (Nat i = 0; i < width; ++i) {
    const Nat code = pair(n, i);
    if (tr_.a.contains_at(code, st) || blocked(code)) continue;
    tr_.b.enumerate(code, st);
    tr_.firings.push_back({n, i, s});
    return;
  }
  throw Error(ErrorKind::HardFault, "Claim census violated: column " + std::to_string(n) +
                                        " has no eligible index below " + std::to_string(width));
}

void Stepper::step() {
  const Nat s = ++stage_;
  if (s > sc_.horizon) throw Error(ErrorKind::HorizonExceeded, "stage past horizon");
  for (Nat e = 0; e < sc_.w.size() && e <= s; ++e) r_step(e, s);
  // Blocks of stage s include axioms made at s: the promotion argument needs
  // x blocked from its creation stage on.
  record_blocks(s);
  std::vector<Nat> entering;
  for (const auto& ev : sc_.c.events()) {
    if (ev.stage == s) entering.push_back(ev.element);
  }
  std::sort(entering.begin(), entering.end());
  for (Nat n : entering) p_step(n, s);
}

Trace run(const Scenario& sc) {
  Stepper st(sc);
  while (st.current() < sc.horizon) st.step();
  return st.take();
}

Nat block_census(const Trace& tr, Nat n, Nat s) {
  Nat count = 0;
  const auto& bl = s < tr.blocks.size() ? tr.blocks[s] : std::vector<Block>{};
  for (Nat i = 0; i < n * n + 1; ++i) {
    const Nat code = pair(n, i);
    bool hit = tr.a.contains_at(code, Stage{s});
    for (const auto& b : bl) hit = hit || b.x == code;
    if (hit) ++count;
  }
  return count;
}

CubeCount cube_census(const Trace& tr, Nat k, Nat s) {
  const Nat cube = k * k * k;
  CubeCount out;
  for (const auto& e : tr.a.events()) {
    if (e.element < cube && e.stage <= s) ++out.a;
  }
  for (const auto& e : tr.b.events()) {
    if (e.element < cube && e.stage <= s) ++out.b;
  }
  return out;
}

Decoded decode_c_from_b(const StageSet& b, Nat n, Nat horizon) {
  Decoded out;
  for (Nat i = 0; i <= n * n + 1; ++i) {
    const auto st = b.entry_stage(pair(n, i));
    if (st && *st <= horizon && (!out.settled_at || *st < *out.settled_at)) {
      out.bit = true;
      out.settled_at = *st;
    }
  }
  return out;
}

BDecode decode_b_from_c(const StageSet& c, const StageSet& b, Nat query, Nat horizon) {
  const auto col = default_pairing().column_code(query);
  if (!col) return BDecode::Out;
  if (!c.contains_at(col->n, Stage{horizon})) return BDecode::Out;
  for (Nat s = 0; s <= horizon; ++s) {
    for (Nat i = 0; i < col->n * col->n + 1; ++i) {
      if (b.contains_at(pair(col->n, i), Stage{s})) return i == col->i ? BDecode::In : BDecode::Out;
    }
  }
  return BDecode::NotSettled;
}

}  // namespace sepclass::twodegrees
