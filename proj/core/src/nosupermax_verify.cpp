#include <algorithm>

#include "sepclass/nosupermax.hpp"

namespace sepclass::nosupermax {

namespace {

std::string str(Nat v) { return std::to_string(v); }

std::string actor(const AttemptTrace& tr) { return "X" + std::to_string(tr.index); }

Nat capacity(const AttemptTrace& tr, const StageSet& a, const StageSet& b) {
  return std::max({a.element_bound(), b.element_bound(), tr.timeline.horizon() + 1});
}

bool bit(const std::vector<char>& v, Nat y) { return y < v.size() && v[y]; }

// Sets as seen by one attempt at its own stage t.
struct View {
  const AttemptTrace& tr;
  const StageSet& a;
  const StageSet& b;

  Stage orig(Nat t) const { return Stage{tr.timeline.map[t]}; }
  bool in_a(Nat y, Nat t) const { return a.contains_at(y, orig(t)); }
  bool in_b(Nat y, Nat t) const { return b.contains_at(y, orig(t)); }
  // Elements entering A (or B) between stages t and t + 1.
  std::vector<Nat> fresh(const StageSet& set, Nat t) const {
    std::vector<Nat> out;
    const Nat lo = tr.timeline.map[t], hi = tr.timeline.map[t + 1];
    for (const auto& e : set.events()) {
      if (e.stage > lo && e.stage <= hi) out.push_back(e.element);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

// W_{t+1} \ W_t from the scenario sets and X_t.
std::vector<Nat> w_fresh(const View& v, const std::vector<char>& x_t, Nat t) {
  std::vector<Nat> out;
  for (Nat y : v.fresh(v.a, t)) {
    if (!bit(x_t, y)) out.push_back(y);
  }
  for (Nat y : v.fresh(v.b, t)) {
    if (bit(x_t, y)) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Boundary at t + 1 from the definition clauses, written out directly.
Boundary boundary_by_definition(const View& v, const Boundary& prev, const std::vector<char>& x_t,
                                std::optional<Nat> zmin, Nat t) {
  Boundary out;
  const Pos s = static_cast<Pos>(t);
  if (v.tr.base >= s) return out;
  out.x.push_back(v.tr.base);
  for (Pos n = -1;; ++n) {
    const Pos cur = out.x.back();
    if (cur == s) break;
    const auto old = prev.entry(n + 1);
    if (!old || *old <= cur) {
      out.x.push_back(s);
      break;
    }
    bool witness = false;
    for (Pos py = cur + 1; py <= *old; ++py) {
      const Nat y = static_cast<Nat>(py);
      if (v.in_a(y, t + 1) || v.in_b(y, t + 1)) continue;
      const bool typed = bit(x_t, y) == in_type(n + 1);
      const bool perm = py == s || (zmin && static_cast<Pos>(*zmin) < py);
      if (typed || perm) {
        witness = true;
        break;
      }
    }
    out.x.push_back(witness ? *old : s);
  }
  return out;
}

void check_attempt(const View& v, Verdict& sep, Verdict& disc, Verdict& trig, Verdict& shape,
                   Verdict& replay) {
  const auto& tr = v.tr;
  const Nat T = tr.timeline.horizon();
  const Nat cap = capacity(tr, v.a, v.b);
  XReplay xr(tr, cap);
  std::vector<char> x_t = xr.at(0);
  x_t.resize(cap, 0);
  for (const auto& e : v.a.events()) {
    if (e.stage <= tr.timeline.map[0] && !bit(x_t, e.element)) {
      sep.fail({0, actor(tr), static_cast<Pos>(e.element), "A element outside X"});
    }
  }
  for (Nat t = 0; t < T; ++t) {
    const auto& rec = tr.records[t];
    std::vector<char> x_n = xr.at(t + 1);
    x_n.resize(std::max<Nat>(cap, x_n.size()), 0);
    const Nat st = t + 1;

    // Separator: only entries and departures can break it once stage 0 holds.
    for (Nat y : v.fresh(v.a, t)) {
      if (!bit(x_n, y)) sep.fail({st, actor(tr), static_cast<Pos>(y), "A element outside X"});
    }
    for (Nat y : v.fresh(v.b, t)) {
      if (bit(x_n, y)) sep.fail({st, actor(tr), static_cast<Pos>(y), "B element inside X"});
    }
    for (Nat y : rec.left) {
      if (v.in_a(y, st)) sep.fail({st, actor(tr), static_cast<Pos>(y), "A element left X"});
    }
    for (Nat y : rec.entered) {
      if (v.in_b(y, st)) sep.fail({st, actor(tr), static_cast<Pos>(y), "B element entered X"});
    }

    const auto w = w_fresh(v, x_t, t);
    const std::optional<Nat> zmin = w.empty() ? std::nullopt : std::optional<Nat>(w.front());
    if (w != rec.w_new) trig.fail({st, actor(tr), -1, "recorded W entries differ"});

    std::vector<Nat> changed = rec.entered;
    changed.insert(changed.end(), rec.left.begin(), rec.left.end());
    for (Nat y : changed) {
      if (bit(x_t, y) == bit(x_n, y)) {
        replay.fail({st, actor(tr), static_cast<Pos>(y), "listed change did not happen"});
        continue;
      }
      const bool c1 = bit(x_t, y) && v.in_b(y, st) && !v.in_b(y, t);
      const bool c2 = !bit(x_t, y) && v.in_a(y, st) && !v.in_a(y, t);
      const bool c3 = zmin && *zmin < y;
      const bool c4 = y == t;
      if (!(c1 || c2 || c3 || c4)) {
        disc.fail({st, actor(tr), static_cast<Pos>(y), "change with no admissible reason"});
      }
      if (t > y && !(zmin && *zmin <= y)) {
        trig.fail({st, actor(tr), static_cast<Pos>(y), "change above s with no W entry <= x"});
      }
    }
    for (Nat z : w) {
      if (bit(x_t, z) == bit(x_n, z)) {
        trig.fail({st, actor(tr), static_cast<Pos>(z), "W entry without an X change"});
      }
    }

    // Shape.
    const auto& bx = rec.boundary;
    const auto& prev = boundary_at(tr, t);
    const bool should = tr.base < static_cast<Pos>(t);
    if (bx.defined() != should) {
      shape.fail({st, actor(tr), -1, should ? "boundary undefined" : "boundary defined early"});
    } else if (bx.defined()) {
      if (bx.x.front() != tr.base) shape.fail({st, actor(tr), bx.x.front(), "x_{-1} is not the base"});
      if (bx.x.back() != static_cast<Pos>(t)) {
        shape.fail({st, actor(tr), bx.x.back(), "last entry differs from s"});
      }
      for (std::size_t i = 1; i < bx.x.size(); ++i) {
        if (bx.x[i] <= bx.x[i - 1]) shape.fail({st, actor(tr), bx.x[i], "not increasing"});
        const Pos n = static_cast<Pos>(i) - 1;
        const auto old = prev.entry(n);
        if (old && bx.x[i] != *old && bx.x[i] != static_cast<Pos>(t)) {
          shape.fail({st, actor(tr), bx.x[i], "x_" + std::to_string(n) + " neither kept nor reset"});
        }
        if (old && bx.x[i] < *old) {
          shape.fail({st, actor(tr), bx.x[i], "x_" + std::to_string(n) + " decreased"});
        }
      }
    }

    // Replay of both definitions.
    const Boundary expect = boundary_by_definition(v, prev, x_t, zmin, t);
    if (!(expect == bx)) replay.fail({st, actor(tr), -1, "boundary differs from definition"});
    std::size_t seg = 1;
    for (Nat y = 0; y < x_n.size(); ++y) {
      bool want = bit(x_t, y);
      if (v.in_a(y, st)) {
        want = true;
      } else if (v.in_b(y, st)) {
        want = false;
      } else if (expect.defined()) {
        const Pos py = static_cast<Pos>(y);
        while (seg < expect.x.size() && expect.x[seg] < py) ++seg;
        const bool inside = seg < expect.x.size() && py > expect.x[seg - 1];
        const bool perm = y == t || (zmin && *zmin < y);
        if (inside && perm) want = in_type(static_cast<Pos>(seg) - 1);
      }
      if (want != bit(x_n, y)) {
        replay.fail({st, actor(tr), static_cast<Pos>(y), "X differs from the five rules"});
      }
    }
    x_t = std::move(x_n);
  }
}

// For every index n unchanged between T - 1 and T there is a hole of the
// interval's type at T.
void check_parity(const View& v, const Outcome& oc, Verdict& par) {
  const auto& tr = v.tr;
  const Nat T = tr.timeline.horizon();
  if (T == 0) return;
  const auto& bt = boundary_at(tr, T);
  const auto& bp = boundary_at(tr, T - 1);
  XReplay xr(tr, capacity(tr, v.a, v.b));
  const auto& x = xr.at(T);
  Nat checked = 0;
  for (Pos n = 0; n <= bt.last_index(); ++n) {
    const auto cur = bt.entry(n);
    if (!cur || cur != bp.entry(n)) continue;
    ++checked;
    bool found = false;
    for (Pos py = *bt.entry(n - 1) + 1; py <= *cur && !found; ++py) {
      const Nat y = static_cast<Nat>(py);
      found = !v.in_a(y, T) && !v.in_b(y, T) && bit(x, y) == in_type(n);
    }
    if (!found) par.fail({T, actor(tr), n, "kept interval has no typed hole"});
  }
  for (std::size_t n = 0; n < oc.parity_witness.size(); ++n) {
    if (!oc.parity_witness[n]) {
      par.fail({T, actor(tr), static_cast<Pos>(n), "stable interval has no typed hole"});
    }
  }
  par.details.push_back(actor(tr) + ": " + str(checked) + " kept intervals, ell = " +
                        std::to_string(oc.ell) + ", settled at " + str(oc.settling_stage));
}

void check_certificate(const View& v, const CertificateCheck& chk, const AttemptTrace* next,
                       Verdict& cert) {
  const auto& c = chk.cert;
  const std::string who = "cert" + std::to_string(c.attempt);
  if (!chk.accepted) {
    cert.details.push_back(who + " rejected: " + chk.reason +
                           (chk.witness_stage ? " at stage " + str(*chk.witness_stage) : ""));
    return;
  }
  XReplay xr(v.tr, capacity(v.tr, v.a, v.b));
  Nat prev = 0;
  for (std::size_t t = 0; t < chk.selected.size(); ++t) {
    const Nat u = chk.selected[t];
    if (u < c.settling_stage || (t > 0 && u <= prev)) {
      cert.fail({u, who, static_cast<Pos>(t), "selected stages not increasing past settling"});
    }
    prev = u;
    const auto bad = speedup_bullets(v.tr, xr.at(u), v.a, v.b, c, t, u);
    if (bad) cert.fail({u, who, static_cast<Pos>(t), *bad});
    if (chk.next.map.size() <= t || chk.next.map[t] != v.tr.timeline.map[u]) {
      cert.fail({u, who, static_cast<Pos>(t), "stage map is not the composed map"});
    }
  }
  if (next && next->timeline.map != chk.next.map) {
    cert.fail({0, who, -1, "next attempt ran on another timeline"});
  }
  cert.details.push_back(who + " accepted: " + str(chk.selected.size()) + " re-indexed stages");
}

// Every y of the failing type in (x_ell, x_{k,s}] at a stage s after settling
// is in A u B by the next change of x_k.
void check_census(const View& v, const SpeedupCertificate& c, Verdict& cen) {
  const auto& tr = v.tr;
  const Nat T = tr.timeline.horizon();
  const bool in = in_type(c.k);
  const Pos xl = *boundary_at(tr, c.settling_stage).entry(c.ell);
  XReplay xr(tr, capacity(tr, v.a, v.b));
  // Stage of the next change of x_k at or after each s.
  std::vector<std::optional<Nat>> next_change(T + 2);
  for (Nat t = T; t + 1 > c.settling_stage; --t) {
    if (t < T && boundary_at(tr, t + 1).entry(c.k) != boundary_at(tr, t).entry(c.k)) {
      next_change[t] = t + 1;
    } else if (t < T) {
      next_change[t] = next_change[t + 1];
    }
    if (t == 0) break;
  }
  Nat checked = 0;
  std::optional<Nat> open;
  for (Nat s = c.settling_stage; s <= T; ++s) {
    const auto& x = xr.at(s);
    const auto xk = boundary_at(tr, s).entry(c.k);
    if (!xk) continue;
    if (!next_change[s]) {
      open = open.value_or(s);
      continue;
    }
    const Nat t1 = *next_change[s];
    for (Pos py = xl + 1; py <= *xk; ++py) {
      const Nat y = static_cast<Nat>(py);
      if (bit(x, y) != in) continue;
      ++checked;
      if (!v.in_a(y, t1) && !v.in_b(y, t1)) {
        cen.fail({s, actor(tr), py,
                  std::string(in ? "in X" : "out of X") + " in the failing interval, outside A u B at " +
                      str(t1)});
      }
    }
  }
  cen.details.push_back(actor(tr) + ": " + str(checked) + " memberships checked");
  if (open) {
    cen.caveat = "horizon-limited: x_k of " + actor(tr) + " does not move after stage " + str(*open);
  }
}

// Attempt `a` against the failure type of an earlier attempt p: a hole h newly
// swept into an interval of that type is permitted at once and placed by type,
// unless attempt p saw a W entry below h in the same span of original stages.
void check_fresh_holes(const View& va, const View& vp, const SpeedupCertificate& cp,
                       Verdict& fresh) {
  const auto& tr = va.tr;
  const Nat T = tr.timeline.horizon();
  const bool in = in_type(cp.k);
  XReplay xr(tr, capacity(tr, va.a, va.b));
  Nat predicted = 0, transferred = 0;
  for (Nat t = 1; t < T; ++t) {
    const auto& bt = boundary_at(tr, t);
    const auto& bn = boundary_at(tr, t + 1);
    if (!bt.defined() || !bn.defined()) continue;
    const auto& rec = tr.records[t];
    const auto& x = xr.at(t + 1);
    for (Pos j = 0; j <= bt.last_index(); ++j) {
      if (in_type(j) != in) continue;
      const auto lo = bt.entry(j - 1), cur = bt.entry(j), nxt = bn.entry(j);
      if (!lo || !cur || !nxt || bn.entry(j - 1) != lo || *nxt == *cur) continue;
      for (Pos ph = *cur + 1; ph <= *nxt; ++ph) {
        const Nat h = static_cast<Nat>(ph);
        if (va.a.contains(h) || va.b.contains(h)) continue;
        const bool perm = h == t || (rec.zmin && *rec.zmin < h);
        if (perm && bit(x, h) == in) {
          ++predicted;
          continue;
        }
        // The span (map[t], map[t+1]] in attempt p's own stages.
        const auto& pm = vp.tr.timeline.map;
        const auto first = std::upper_bound(pm.begin(), pm.end(), tr.timeline.map[t]);
        bool chain = false;
        for (auto it = first; it != pm.end() && *it <= tr.timeline.map[t + 1] && !chain; ++it) {
          const auto u = static_cast<std::size_t>(it - pm.begin());
          if (u == 0) continue;
          const auto& z = vp.tr.records[u - 1].zmin;
          chain = z && *z < h;
        }
        if (chain) {
          ++transferred;
          fresh.details.push_back(actor(tr) + ": hole " + str(h) + " at stage " + str(t + 1) +
                                  " passed to " + actor(vp.tr));
        } else {
          fresh.fail({t + 1, actor(tr), ph,
                      std::string(perm ? "permitted but misplaced" : "not permitted") +
                          " against the failure type of " + actor(vp.tr)});
        }
      }
    }
  }
  fresh.details.push_back(actor(tr) + " vs " + actor(vp.tr) + ": " + str(predicted) +
                          " predicted, " + str(transferred) + " transferred");
}

}  // namespace

VerificationReport verify(const Scenario& sc, const Trace& trace) {
  VerificationReport rep;
  rep.construction = "nosupermax";
  Verdict sep("separator", "A_s ⊆ X_{a,s} and X_{a,s} ∩ B_s = ∅");
  Verdict disc("change-discipline",
               "x ∈ X_s △ X_{s+1} => x ∈ X_s∩B_{s+1} or x ∈ co-X_s∩A_{s+1} or some z<x is, or x = s");
  Verdict trig("w-trigger",
               "x ∈ W_{s+1}\\W_s => x ∈ X_s △ X_{s+1}; x ∈ X_s △ X_{s+1}, s > x => ∃z<=x, z ∈ W_{s+1}\\W_s");
  Verdict shape("boundary-shape",
                "x_{-1,s+1} < x_{0,s+1} < ... < x_{k,s+1} = s, x_{n,s+1} ∈ {x_{n,s}, s}");
  Verdict replay("construction-replay", "boundary and X follow their defining clauses");
  Verdict par("parity-witness",
              "x_n kept => ∃y ∈ (x_{n-1}, x_n], y ∉ A∪B, y ∈ X iff n odd");
  Verdict cert("speedup-certificate",
               "g(t): x_{n,g(t)} = x_n (n<k), x_{k,g(t)} > t, (x_ℓ, t] ⊆ A∪co-X (k odd) or X∪B (k even)");
  Verdict cen("failing-interval-census",
              "y ∈ (x_ℓ, x_{k,s}] ∩ X_s (k odd; co-X_s for k even) => y ∈ A ∪ B");
  Verdict fresh("fresh-hole-permission",
                "hole h swept into an interval of an earlier attempt's failing type => h permitted, placed by type");

  for (std::size_t i = 0; i < trace.attempts.size(); ++i) {
    const View v{trace.attempts[i], sc.a, sc.b};
    check_attempt(v, sep, disc, trig, shape, replay);
    if (i < trace.outcomes.size()) check_parity(v, trace.outcomes[i], par);
  }
  for (std::size_t i = 0; i < trace.checks.size() && i < trace.attempts.size(); ++i) {
    const View v{trace.attempts[i], sc.a, sc.b};
    const AttemptTrace* next = i + 1 < trace.attempts.size() ? &trace.attempts[i + 1] : nullptr;
    check_certificate(v, trace.checks[i], next, cert);
    if (trace.checks[i].accepted) check_census(v, trace.checks[i].cert, cen);
  }
  for (std::size_t a = 1; a < trace.attempts.size(); ++a) {
    const View va{trace.attempts[a], sc.a, sc.b};
    for (std::size_t p = 0; p < a && p < trace.checks.size(); ++p) {
      if (!trace.checks[p].accepted) continue;
      const View vp{trace.attempts[p], sc.a, sc.b};
      check_fresh_holes(va, vp, trace.checks[p].cert, fresh);
    }
  }
  if (trace.checks.empty()) cert.details.push_back("no certificate offered");
  if (trace.attempts.size() < 2) {
    cen.details.push_back("no accepted certificate");
    fresh.details.push_back("single attempt");
  }
  rep.verdicts = {sep, disc, trig, shape, replay, par, cert, cen, fresh};
  return rep;
}

}  // namespace sepclass::nosupermax
