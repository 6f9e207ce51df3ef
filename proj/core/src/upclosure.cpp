#include "sepclass/upclosure.hpp"

namespace sepclass::upclosure {

std::string CaseTag::name() const {
  return kind == Kind::Case1 ? "case1(" + std::to_string(k) + ")" : "case2";
}

bool covered(const StageSet& a, const StageSet& b, Stage s, Pos lo, Pos hi) {
  for (Pos y = lo + 1; y <= hi; ++y) {
    const Nat x = static_cast<Nat>(y);
    if (!a.contains_at(x, s) && !b.contains_at(x, s)) return false;
  }
  return true;
}

std::vector<Nat> covered_points(const StageSet& a, const StageSet& b, const UseBound& f,
                                Stage s, Nat domain) {
  std::vector<Nat> out;
  for (Nat x = 0; x < domain && f.defined(x); ++x) {
    const Nat fx = f(x);
    if (fx >= domain) break;
    if (covered(a, b, s, static_cast<Pos>(x), static_cast<Pos>(fx))) out.push_back(x);
  }
  return out;
}

namespace {

// Largest n with Op^{oracle}↾n = target↾n at stage s, capped at `cap`.
Nat agreement_length(const UseBoundedOperator& op, const std::vector<bool>& oracle,
                     const StageSet& target, Stage s, Nat cap) {
  for (Nat x = 0; x < cap; ++x) {
    if (!op.bound().defined(x)) return x;
    const auto e = op.program().evaluate(oracle, x, s.value);
    if (!e.halted || e.output != target.contains_at(x, s)) return x;
  }
  return cap;
}

Nat oracle_length(const UseBoundedOperator& op, Nat domain) {
  const auto& t = op.bound().table();
  Nat len = domain;
  for (Nat x = 0; x < domain && x < t.size(); ++x) len = std::max(len, t[x]);
  return len;
}

}  // namespace

std::vector<std::string> audit_hypotheses(const Scenario& sc) {
  std::vector<std::string> problems;
  const Stage h{sc.horizon};
  for (const auto& e : sc.a.events()) {
    if (sc.b.contains(e.element)) {
      problems.push_back("A and B share " + std::to_string(e.element));
      break;
    }
  }
  const auto a_bits = sc.a.characteristic(h, oracle_length(sc.gamma, sc.domain));
  const auto b_bits = sc.b.characteristic(h, oracle_length(sc.delta, sc.domain));
  const Nat g = agreement_length(sc.gamma, a_bits, sc.b, h, sc.domain);
  if (g < sc.domain) problems.push_back("Gamma^A differs from B at " + std::to_string(g));
  const Nat d = agreement_length(sc.delta, b_bits, sc.a, h, sc.domain);
  if (d < sc.domain) problems.push_back("Delta^B differs from A at " + std::to_string(d));
  bool hole = false;
  for (Nat x = sc.domain / 2; x < sc.domain && !hole; ++x) {
    hole = !sc.a.contains(x) && !sc.b.contains(x);
  }
  if (!hole) problems.push_back("no hole in the upper half of the domain");
  for (Nat x = 0; x < sc.domain; ++x) {
    if (!sc.f.defined(x)) {
      problems.push_back("f undefined at " + std::to_string(x));
      break;
    }
  }
  return problems;
}

void require_hypotheses(const Scenario& sc) {
  const auto problems = audit_hypotheses(sc);
  if (!problems.empty()) throw Error(ErrorKind::Hypothesis, problems.front());
}

bool classify_case(const StageSet& a, const StageSet& b, const UseBound& f, Nat horizon,
                   Nat domain, const CaseTag& declared) {
  const auto pts = covered_points(a, b, f, Stage{horizon}, domain);
  if (declared.kind == CaseTag::Kind::Case1) {
    for (Nat x : pts) {
      if (x >= declared.k) return false;
    }
    return true;
  }
  return pts.size() >= (domain + 9) / 10;
}

bool MSequence::strictly_increasing() const {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) return false;
  }
  return true;
}

MSequenceResult m_sequence(const CaseTag& tag, const StageSet& a, const StageSet& b, Stage s,
                           const UseBound& f, Nat count) {
  MSequenceResult out;
  if (count == 0) return out;
  auto& v = out.seq.values;
  if (tag.kind == CaseTag::Kind::Case1) {
    v.push_back(static_cast<Pos>(tag.k));
    while (v.size() < count) v.push_back(static_cast<Pos>(f(static_cast<Nat>(v.back()))));
    return out;
  }
  v.push_back(-1);
  while (v.size() < count) {
    const Pos prev = v.back();
    std::optional<Pos> next;
    for (Nat x = static_cast<Nat>(prev + 1); f.defined(x); ++x) {
      const Pos px = static_cast<Pos>(x);
      if (covered(a, b, s, prev, px)) continue;
      if (covered(a, b, s, px, static_cast<Pos>(f(x)))) {
        next = px;
        break;
      }
    }
    if (!next) {
      out.not_yet = v.size();
      break;
    }
    v.push_back(*next);
  }
  return out;
}

SeparatorSnapshot encode_separator(const StageSet& c, const MSequence& m, const StageSet& a,
                                   const StageSet& b, Stage s, Nat length) {
  if (m.values.empty() || static_cast<Pos>(length) > m.values.back() + 1) {
    throw Error(ErrorKind::DomainMismatch, "m-sequence too short");
  }
  SeparatorSnapshot z(length);
  for (Pos y = 0; y <= m.values.front() && y < static_cast<Pos>(length); ++y) {
    z.set(static_cast<Nat>(y), a.contains_at(static_cast<Nat>(y), s));
  }
  for (std::size_t n = 0; n + 1 < m.values.size(); ++n) {
    const bool in_c = c.contains_at(n, s);
    for (Pos y = m.values[n] + 1; y <= m.values[n + 1] && y < static_cast<Pos>(length); ++y) {
      const Nat x = static_cast<Nat>(y);
      z.set(x, in_c ? !b.contains_at(x, s) : a.contains_at(x, s));
    }
  }
  return z;
}

BlockAgreement block_agreement(const SeparatorSnapshot& z, const StageSet& a, const StageSet& b,
                               Stage s, Pos lo, Pos hi) {
  BlockAgreement out{true, true};
  for (Pos y = lo + 1; y <= hi; ++y) {
    const Nat x = static_cast<Nat>(y);
    if (x >= z.length()) return {};
    out.with_a = out.with_a && z[x] == a.contains_at(x, s);
    out.with_co_b = out.with_co_b && z[x] == !b.contains_at(x, s);
  }
  return out;
}

Decoded decode_block(const SeparatorSnapshot& z, const StageSet& a, const StageSet& b, Pos lo,
                     Pos hi, Nat horizon) {
  for (Nat s = 0; s <= horizon; ++s) {
    const auto ag = block_agreement(z, a, b, Stage{s}, lo, hi);
    if (ag.with_a != ag.with_co_b) return {ag.with_co_b, s};
  }
  throw Error(ErrorKind::HorizonExceeded, "undecided at horizon on (" + std::to_string(lo) +
                                              ", " + std::to_string(hi) + "]");
}

Recovered recover_m_next(const SeparatorSnapshot& z, const StageSet& a, const StageSet& b,
                         const UseBoundedOperator& gamma, const UseBoundedOperator& delta,
                         const UseBound& f, const MSequence& prefix, Nat horizon) {
  const auto& m = prefix.values;
  if (m.empty()) throw Error(ErrorKind::InvalidArgument, "empty m-prefix");
  const std::size_t n = m.size() - 1;
  const Pos mn = m.back();
  const Nat zlen = z.length();
  const Nat a_len = oracle_length(gamma, zlen);
  const Nat b_len = oracle_length(delta, zlen);
  for (Nat s = 0; s <= horizon; ++s) {
    const Stage st{s};
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const auto ag = block_agreement(z, a, b, st, m[i], m[i + 1]);
      ok = ag.with_a || ag.with_co_b;
    }
    // m_0 = -1 carries no interval; the covered bullet starts at m_1.
    for (std::size_t i = 1; i <= n && ok; ++i) {
      const Nat mi = static_cast<Nat>(m[i]);
      ok = f.defined(mi) && covered(a, b, st, m[i], static_cast<Pos>(f(mi)));
    }
    if (!ok) continue;
    const auto a_bits = a.characteristic(st, a_len);
    const auto b_bits = b.characteristic(st, b_len);
    const Nat g = agreement_length(gamma, a_bits, b, st, zlen);
    const Nat d = agreement_length(delta, b_bits, a, st, zlen);
    for (Nat x = static_cast<Nat>(mn + 1); x < zlen && f.defined(x); ++x) {
      const Pos px = static_cast<Pos>(x);
      if (x + 1 > g || x + 1 > d) break;
      const auto ag = block_agreement(z, a, b, st, mn, px);
      if (!ag.with_a && !ag.with_co_b) continue;
      if (covered(a, b, st, mn, px)) continue;
      if (!covered(a, b, st, px, static_cast<Pos>(f(x)))) continue;
      return {px, s};
    }
  }
  throw Error(ErrorKind::HorizonExceeded, "not settled: m_" + std::to_string(n + 1));
}

Trace run(const Scenario& sc) {
  require_hypotheses(sc);
  Trace t;
  t.horizon = sc.horizon;
  t.domain = sc.domain;
  t.declared = sc.declared;
  const Stage h{sc.horizon};
  t.case_consistent = classify_case(sc.a, sc.b, sc.f, sc.horizon, sc.domain, sc.declared);
  auto ms = m_sequence(sc.declared, sc.a, sc.b, h, sc.f, sc.blocks + 1);
  t.m = ms.seq;
  t.m_not_yet = ms.not_yet;
  const Nat zlen = std::min<Nat>(sc.domain, static_cast<Nat>(t.m.values.back() + 1));
  t.z = encode_separator(sc.c, t.m, sc.a, sc.b, h, zlen);

  // The decoder only sees Z: in case 2 it recovers each block end itself.
  MSequence known;
  known.values.push_back(t.m.values.front());
  for (std::size_t n = 0; n + 1 < t.m.values.size(); ++n) {
    BlockRecord rec;
    rec.n = n;
    rec.in_c = sc.c.contains_at(n, h);
    rec.lo = t.m.values[n];
    rec.hi = t.m.values[n + 1];
    Pos lo = known.values.back(), hi = rec.hi;
    if (sc.declared.kind == CaseTag::Kind::Case2) {
      try {
        rec.recovered = recover_m_next(t.z, sc.a, sc.b, sc.gamma, sc.delta, sc.f, known,
                                       sc.horizon);
        hi = rec.recovered->value;
      } catch (const Error& e) {
        rec.error = e.what();
      }
    } else {
      hi = static_cast<Pos>(sc.f(static_cast<Nat>(lo)));
    }
    known.values.push_back(hi);
    if (rec.error.empty()) {
      try {
        rec.decoded = decode_block(t.z, sc.a, sc.b, lo, hi, sc.horizon);
      } catch (const Error& e) {
        rec.error = e.what();
      }
    }
    for (Nat s = 0; s <= sc.horizon; ++s) {
      const auto ag = block_agreement(t.z, sc.a, sc.b, Stage{s}, rec.lo, rec.hi);
      if (ag.with_a && ag.with_co_b) rec.double_agreement.push_back(s);
    }
    t.blocks.push_back(std::move(rec));
    if (!t.blocks.back().error.empty()) break;
  }
  return t;
}

}  // namespace sepclass::upclosure
