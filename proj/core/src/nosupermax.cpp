#include "sepclass/nosupermax.hpp"

#include <algorithm>

namespace sepclass::nosupermax {

std::optional<Pos> Boundary::entry(Pos n) const {
  const Pos i = n + 1;
  if (i < 0 || i >= static_cast<Pos>(x.size())) return std::nullopt;
  return x[static_cast<std::size_t>(i)];
}

Timeline Timeline::identity(Nat horizon) {
  Timeline t;
  t.map.resize(horizon + 1);
  for (Nat s = 0; s <= horizon; ++s) t.map[s] = s;
  return t;
}

Attempt::Attempt(int index, Pos base, Nat capacity, const std::vector<Nat>& initial_a,
                 const std::vector<Nat>& initial_b)
    : index_(index), base_(base), x_(capacity, 0), a_(capacity, 0), b_(capacity, 0) {
  for (Nat y : initial_a) {
    grow(y);
    a_[y] = 1;
    x_[y] = 1;
  }
  for (Nat y : initial_b) {
    grow(y);
    b_[y] = 1;
  }
}

void Attempt::grow(Nat y) {
  if (y < x_.size()) return;
  const Nat n = std::max<Nat>(y + 1, x_.size() * 2);
  x_.resize(n, 0);
  a_.resize(n, 0);
  b_.resize(n, 0);
}

bool Attempt::permitted(Nat y, Nat s, bool in_a_next, bool in_b_next, std::optional<Nat> zmin) {
  if (in_a_next || in_b_next) return false;
  return y == s || (zmin && *zmin < y);
}

Boundary Attempt::next_boundary(Nat s, std::optional<Nat> zmin) const {
  Boundary out;
  const Pos ps = static_cast<Pos>(s);
  if (base_ >= ps) return out;
  out.x.push_back(base_);
  while (out.x.back() != ps) {
    const Pos cur = out.x.back();
    const std::size_t i = out.x.size();
    if (i >= boundary_.x.size() || boundary_.x[i] <= cur) {
      out.x.push_back(ps);
      break;
    }
    const Pos old = boundary_.x[i];
    const bool in = in_type(static_cast<Pos>(i) - 1);
    bool witness = false;
    for (Pos py = cur + 1; py <= old && !witness; ++py) {
      const Nat y = static_cast<Nat>(py);
      if (in_a(y) || in_b(y)) continue;
      witness = in_x(y) == in || permitted(y, s, false, false, zmin);
    }
    out.x.push_back(witness ? old : ps);
  }
  return out;
}

const StageRecord& Attempt::step(const std::vector<Nat>& new_a, const std::vector<Nat>& new_b) {
  const Nat s = stage_;
  StageRecord rec;
  rec.stage = s + 1;
  grow(s);
  for (Nat y : new_a) grow(y);
  for (Nat y : new_b) grow(y);

  // W_{s+1} \ W_s against X_s, before anything moves.
  for (Nat y : new_a) {
    if (!x_[y]) rec.w_new.push_back(y);
  }
  for (Nat y : new_b) {
    if (x_[y]) rec.w_new.push_back(y);
  }
  std::sort(rec.w_new.begin(), rec.w_new.end());
  if (!rec.w_new.empty()) rec.zmin = rec.w_new.front();

  for (Nat y : new_a) a_[y] = 1;
  for (Nat y : new_b) b_[y] = 1;

  rec.boundary = next_boundary(s, rec.zmin);

  auto set = [&](Nat y, bool v) {
    if (static_cast<bool>(x_[y]) == v) return;
    x_[y] = v;
    (v ? rec.entered : rec.left).push_back(y);
  };
  for (Nat y : new_a) set(y, true);
  for (Nat y : new_b) set(y, false);
  const auto& bx = rec.boundary.x;
  for (std::size_t i = 1; i < bx.size(); ++i) {
    const bool in = in_type(static_cast<Pos>(i) - 1);
    const Pos lo = bx[i - 1], hi = bx[i];
    Pos from = hi + 1;
    if (rec.zmin) from = std::max(lo + 1, static_cast<Pos>(*rec.zmin) + 1);
    for (Pos py = from; py <= hi; ++py) {
      const Nat y = static_cast<Nat>(py);
      if (permitted(y, s, a_[y], b_[y], rec.zmin)) set(y, in);
    }
    const Pos ps = static_cast<Pos>(s);
    if (ps > lo && ps <= hi && ps < from && permitted(s, s, a_[s], b_[s], rec.zmin)) set(s, in);
  }
  std::sort(rec.entered.begin(), rec.entered.end());
  std::sort(rec.left.begin(), rec.left.end());

  boundary_ = rec.boundary;
  ++stage_;
  records_.push_back(std::move(rec));
  return records_.back();
}

namespace {

std::vector<Entry> by_stage(const StageSet& set) {
  auto ev = set.events();
  std::stable_sort(ev.begin(), ev.end(),
                   [](const Entry& l, const Entry& r) { return l.stage < r.stage; });
  return ev;
}

// Elements of `ev` stamped in (lo, hi], advancing `pos`.
std::vector<Nat> take(const std::vector<Entry>& ev, std::size_t& pos, Nat hi) {
  std::vector<Nat> out;
  while (pos < ev.size() && ev[pos].stage <= hi) out.push_back(ev[pos++].element);
  return out;
}

}  // namespace

AttemptTrace run_attempt(int index, Pos base, const StageSet& a, const StageSet& b,
                         const Timeline& timeline) {
  if (index < 1 || index > 3) {
    throw Error(ErrorKind::InvalidArgument, "no such attempt: " + std::to_string(index));
  }
  if (timeline.map.empty()) throw Error(ErrorKind::InvalidArgument, "empty timeline");
  const auto ea = by_stage(a), eb = by_stage(b);
  std::size_t pa = 0, pb = 0;
  const Nat cap = std::max({a.element_bound(), b.element_bound(), timeline.horizon() + 1});
  const auto init_a = take(ea, pa, timeline.map[0]);
  const auto init_b = take(eb, pb, timeline.map[0]);
  Attempt att(index, base, cap, init_a, init_b);
  AttemptTrace tr;
  tr.index = index;
  tr.base = base;
  tr.timeline = timeline;
  tr.initial_x = init_a;
  std::sort(tr.initial_x.begin(), tr.initial_x.end());
  for (Nat t = 0; t < timeline.horizon(); ++t) {
    const auto na = take(ea, pa, timeline.map[t + 1]);
    const auto nb = take(eb, pb, timeline.map[t + 1]);
    att.step(na, nb);
  }
  tr.records = att.records();
  return tr;
}

const Boundary& boundary_at(const AttemptTrace& tr, Nat t) {
  static const Boundary undefined;
  if (t == 0 || t > tr.records.size()) return undefined;
  return tr.records[t - 1].boundary;
}

XReplay::XReplay(const AttemptTrace& tr, Nat capacity) : tr_(tr), x_(capacity, 0) {
  for (Nat y : tr.initial_x) {
    if (y >= x_.size()) x_.resize(y + 1, 0);
    x_[y] = 1;
  }
}

const std::vector<char>& XReplay::at(Nat t) {
  if (t < t_) throw Error(ErrorKind::InvalidArgument, "X replay cannot rewind");
  while (t_ < t && t_ < tr_.records.size()) {
    const auto& r = tr_.records[t_];
    for (Nat y : r.entered) {
      if (y >= x_.size()) x_.resize(y + 1, 0);
      x_[y] = 1;
    }
    for (Nat y : r.left) {
      if (y < x_.size()) x_[y] = 0;
    }
    ++t_;
  }
  return x_;
}

namespace {

Nat replay_capacity(const AttemptTrace& tr, const StageSet& a, const StageSet& b) {
  return std::max({a.element_bound(), b.element_bound(), tr.timeline.horizon() + 1});
}

bool bit(const std::vector<char>& v, Nat y) { return y < v.size() && v[y]; }

}  // namespace

Outcome detect_outcome(const AttemptTrace& tr, const StageSet& a, const StageSet& b, Nat window) {
  const Nat T = tr.timeline.horizon();
  if (window > T) {
    throw Error(ErrorKind::InvalidArgument, "window exceeds horizon: " + std::to_string(window) +
                                                " > " + std::to_string(T));
  }
  Outcome out;
  out.window = window;
  const Boundary& last = boundary_at(tr, T);
  const Pos top = last.last_index();
  out.last_change.assign(static_cast<std::size_t>(std::max<Pos>(top + 2, 0)), 0);
  for (Nat t = 1; t <= T; ++t) {
    const auto& cur = boundary_at(tr, t);
    const auto& prev = boundary_at(tr, t - 1);
    for (Pos n = -1; n <= top; ++n) {
      if (cur.entry(n) != prev.entry(n)) out.last_change[static_cast<std::size_t>(n + 1)] = t;
    }
  }
  // Stable over the window means unchanged at every stage in (T - window, T]
  // and defined at T - window.
  const Nat from = T - window;
  Pos ell = -2;
  for (Pos n = -1; n <= top; ++n) {
    const Nat lc = out.last_change[static_cast<std::size_t>(n + 1)];
    if (lc > from || !boundary_at(tr, from).entry(n)) break;
    ell = n;
  }
  out.ell = std::max<Pos>(ell, -1);
  out.k = out.ell + 1;
  out.parity = static_cast<int>(out.k % 2);
  for (Pos n = -1; n <= ell; ++n) {
    out.settling_stage =
        std::max(out.settling_stage, out.last_change[static_cast<std::size_t>(n + 1)]);
  }
  // x_k must stay defined from the settling stage on.
  for (Nat t = T + 1; t-- > out.settling_stage;) {
    if (!boundary_at(tr, t).entry(out.k)) {
      out.settling_stage = t + 1;
      break;
    }
  }

  XReplay xr(tr, replay_capacity(tr, a, b));
  const auto& x = xr.at(T);
  const Stage orig{tr.timeline.map[T]};
  for (Pos n = 0; n <= out.ell; ++n) {
    std::optional<Nat> w;
    const Pos lo = *last.entry(n - 1), hi = *last.entry(n);
    for (Pos py = lo + 1; py <= hi && !w; ++py) {
      const Nat y = static_cast<Nat>(py);
      if (a.contains_at(y, orig) || b.contains_at(y, orig)) continue;
      if (bit(x, y) == in_type(n)) w = y;
    }
    out.parity_witness.push_back(w);
  }
  return out;
}

std::optional<std::string> speedup_bullets(const AttemptTrace& tr, const std::vector<char>& x_u,
                                           const StageSet& a, const StageSet& b,
                                           const SpeedupCertificate& cert, Nat t, Nat u) {
  const auto& bu = boundary_at(tr, u);
  const auto& bs = boundary_at(tr, cert.settling_stage);
  for (Pos n = -1; n <= cert.ell; ++n) {
    const auto v = bu.entry(n);
    if (!v || v != bs.entry(n)) return "x_" + std::to_string(n) + " differs from its settled value";
  }
  const auto xk = bu.entry(cert.k);
  if (!xk || *xk <= static_cast<Pos>(t)) {
    return "x_" + std::to_string(cert.k) + " not above " + std::to_string(t);
  }
  const Stage orig{tr.timeline.map[u]};
  const bool in = in_type(cert.k);
  const Pos xl = *bs.entry(cert.ell);
  for (Pos py = xl + 1; py <= static_cast<Pos>(t); ++py) {
    const Nat y = static_cast<Nat>(py);
    const bool ok = in ? (a.contains_at(y, orig) || !bit(x_u, y))
                       : (bit(x_u, y) || b.contains_at(y, orig));
    if (!ok) return "y = " + std::to_string(y) + (in ? " in X \\ A" : " out of X u B");
  }
  return std::nullopt;
}

CertificateCheck apply_speedup(const AttemptTrace& tr, const StageSet& a, const StageSet& b,
                               const SpeedupCertificate& cert, Nat window) {
  CertificateCheck out;
  out.cert = cert;
  auto reject = [&](std::string why, std::optional<Nat> stage) {
    out.accepted = false;
    out.reason = std::move(why);
    out.witness_stage = stage;
    return out;
  };
  const Nat T = tr.timeline.horizon();
  if (cert.attempt != tr.index) return reject("certificate names another attempt", {});
  if (cert.ell < -1) return reject("ell below -1", {});
  if (cert.k != cert.ell + 1) return reject("k must be ell + 1", {});
  if (cert.parity != static_cast<int>(cert.k % 2)) return reject("parity does not match k", {});
  if (cert.settling_stage > T) return reject("settling stage past horizon", {});
  if (window > T) return reject("window exceeds horizon", {});

  const auto& bs = boundary_at(tr, cert.settling_stage);
  for (Pos n = -1; n <= cert.ell; ++n) {
    if (!bs.entry(n)) return reject("x_" + std::to_string(n) + " undefined at settling stage",
                                    cert.settling_stage);
  }
  for (Nat t = cert.settling_stage; t <= T; ++t) {
    const auto& bt = boundary_at(tr, t);
    for (Pos n = -1; n <= cert.ell; ++n) {
      if (bt.entry(n) != bs.entry(n)) {
        return reject("x_" + std::to_string(n) + " moves after settling", t);
      }
    }
  }
  for (Nat t = cert.settling_stage; t <= T; ++t) {
    if (!boundary_at(tr, t).entry(cert.k)) {
      return reject("x_" + std::to_string(cert.k) + " undefined", t);
    }
  }
  bool moved = false;
  for (Nat t = T - window + 1; t <= T && !moved; ++t) {
    if (t > cert.settling_stage && t >= 1) {
      moved = boundary_at(tr, t).entry(cert.k) != boundary_at(tr, t - 1).entry(cert.k);
    }
  }
  if (!moved) return reject("attempt not yet failed", T);

  XReplay xr(tr, replay_capacity(tr, a, b));
  Nat next_t = 0;
  for (Nat u = cert.settling_stage; u <= T; ++u) {
    const auto& x = xr.at(u);
    if (!speedup_bullets(tr, x, a, b, cert, next_t, u)) {
      out.selected.push_back(u);
      out.next.map.push_back(tr.timeline.map[u]);
      ++next_t;
    }
  }
  if (out.selected.empty()) return reject("no qualifying stages", cert.settling_stage);
  out.accepted = true;
  return out;
}

Nat window_for(const Scenario& sc, Nat horizon) {
  return horizon * std::min<Nat>(sc.window_percent, 100) / 100;
}

Trace run(const Scenario& sc) {
  for (const auto& e : sc.a.events()) {
    if (sc.b.contains(e.element)) {
      throw Error(ErrorKind::Hypothesis, "A and B share " + std::to_string(e.element));
    }
  }
  Trace out;
  Timeline tl = Timeline::identity(sc.horizon);
  Pos base = -1;
  for (int index = 1; index <= 3; ++index) {
    out.attempts.push_back(run_attempt(index, base, sc.a, sc.b, tl));
    const auto& tr = out.attempts.back();
    const Nat window = window_for(sc, tr.timeline.horizon());
    out.outcomes.push_back(detect_outcome(tr, sc.a, sc.b, window));
    if (index == 3) break;
    std::optional<SpeedupCertificate> cert;
    for (const auto& c : sc.certificates) {
      if (c.attempt == index) cert = c;
    }
    if (!cert && sc.auto_certify) cert = out.outcomes.back().proposal(index);
    if (!cert) break;
    out.checks.push_back(apply_speedup(tr, sc.a, sc.b, *cert, window));
    const auto& chk = out.checks.back();
    if (!chk.accepted) break;
    base = *boundary_at(tr, cert->settling_stage).entry(cert->ell);
    tl = chk.next;
  }
  return out;
}

}  // namespace sepclass::nosupermax
