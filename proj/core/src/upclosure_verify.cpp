#include "sepclass/upclosure.hpp"

namespace sepclass::upclosure {

VerificationReport verify(const Scenario& sc, const Trace& trace) {
  VerificationReport report;
  report.construction = "upclosure";
  Verdict hyp{"hypotheses", "A n B = 0, Gamma^A = B, Delta^B = A, holes in the domain"};
  Verdict declared{"case-declaration", "case1(k): no x >= k with (x, f(x)] in A u B; case2: such x are frequent"};
  Verdict mseq{"m-sequence", "m strictly increasing; case1 m_{i+1} = f(m_i); case2 m_{n+1} least x > m_n, (m_n, x] not in A u B, (x, f(x)] in A u B"};
  Verdict sep{"separator", "A subset Z, Z n B = 0"};
  Verdict round{"round-trip", "n in C iff Z agrees with co-B on (m_n, m_{n+1}]"};
  Verdict recov{"m-recovery", "stage search from Z and m_0..m_n yields y = m_{n+1}"};
  Verdict excl{"mutual-exclusion", "(m_n, m_{n+1}] not in A u B => Z never agrees with both A_s and co-B_s"};
  declared.caveat = "consistency at the horizon only; the case split itself is not decidable";

  const Stage h{sc.horizon};
  for (const auto& p : audit_hypotheses(sc)) hyp.fail({sc.horizon, "scenario", -1, p});
  if (!classify_case(sc.a, sc.b, sc.f, sc.horizon, sc.domain, sc.declared)) {
    declared.fail({sc.horizon, "scenario", -1, "declared " + sc.declared.name() + " inconsistent"});
  }

  const auto& m = trace.m.values;
  if (!trace.m.strictly_increasing()) mseq.fail({sc.horizon, "m", -1, "not strictly increasing"});
  const auto direct = m_sequence(sc.declared, sc.a, sc.b, h, sc.f, m.size());
  if (direct.seq.values != m) mseq.fail({sc.horizon, "m", -1, "differs from the direct recursion"});
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    const Pos lo = m[i], hi = m[i + 1];
    if (sc.declared.kind == CaseTag::Kind::Case1) {
      if (!sc.f.defined(static_cast<Nat>(lo)) || hi != static_cast<Pos>(sc.f(static_cast<Nat>(lo)))) {
        mseq.fail({sc.horizon, "m", hi, "m_{i+1} != f(m_i)"});
      }
      continue;
    }
    if (covered(sc.a, sc.b, h, lo, hi)) mseq.fail({sc.horizon, "m", hi, "(m_n, m_{n+1}] inside A u B"});
    const Nat x = static_cast<Nat>(hi);
    if (!sc.f.defined(x) || !covered(sc.a, sc.b, h, hi, static_cast<Pos>(sc.f(x)))) {
      mseq.fail({sc.horizon, "m", hi, "(m_{n+1}, f(m_{n+1})] not inside A u B"});
    }
  }
  if (sc.declared.kind == CaseTag::Kind::Case1 && !m.empty() &&
      m.front() != static_cast<Pos>(sc.declared.k)) {
    mseq.fail({sc.horizon, "m", m.front(), "m_0 != k"});
  }

  const auto& z = trace.z;
  for (Nat x = 0; x < z.length(); ++x) {
    if (sc.a.contains_at(x, h) && !z[x]) sep.fail({sc.horizon, "Z", static_cast<Pos>(x), "A-element missing from Z"});
    if (sc.b.contains_at(x, h) && z[x]) sep.fail({sc.horizon, "Z", static_cast<Pos>(x), "B-element in Z"});
  }

  if (trace.blocks.size() != trace.m.blocks()) {
    round.fail({sc.horizon, "decoder", static_cast<Pos>(trace.blocks.size()), "not every block was decoded"});
  }
  for (const auto& rec : trace.blocks) {
    const std::string who = "block " + std::to_string(rec.n);
    const bool in_c = sc.c.contains_at(rec.n, h);
    if (rec.n + 1 >= m.size() || rec.lo != m[rec.n] || rec.hi != m[rec.n + 1]) {
      round.fail({sc.horizon, who, rec.hi, "block bounds differ from the m-sequence"});
      continue;
    }
    if (!rec.decoded) {
      round.fail({sc.horizon, who, -1, rec.error.empty() ? "not decoded" : rec.error});
    } else {
      if (rec.decoded->bit != in_c) round.fail({rec.decoded->stage, who, static_cast<Pos>(rec.n), "decoded bit differs from C"});
      try {
        const auto again = decode_block(z, sc.a, sc.b, rec.lo, rec.hi, sc.horizon);
        if (again.bit != rec.decoded->bit || again.stage != rec.decoded->stage) {
          round.fail({again.stage, who, static_cast<Pos>(rec.n), "recorded decoding does not replay"});
        }
      } catch (const Error& e) {
        round.fail({sc.horizon, who, static_cast<Pos>(rec.n), e.what()});
      }
    }
    if (sc.declared.kind == CaseTag::Kind::Case2) {
      if (!rec.recovered) {
        recov.fail({sc.horizon, who, rec.hi, rec.error.empty() ? "not recovered" : rec.error});
      } else if (rec.recovered->value != rec.hi) {
        recov.fail({rec.recovered->stage, who, rec.recovered->value,
                    "recovered " + std::to_string(rec.recovered->value) + " but m_{n+1} = " + std::to_string(rec.hi)});
      }
    }
    for (Nat s = 0; s <= sc.horizon; ++s) {
      const auto ag = block_agreement(z, sc.a, sc.b, Stage{s}, rec.lo, rec.hi);
      if (ag.with_a && ag.with_co_b) {
        excl.fail({s, who, rec.hi, "Z agrees with both A_s and co-B_s"});
        break;
      }
    }
  }
  if (sc.declared.kind != CaseTag::Kind::Case2) {
    recov.informational = true;
    recov.caveat = "case 1 blocks come from iterating f; no recovery needed";
  }
  report.verdicts = {hyp, declared, mseq, sep, round, recov, excl};
  return report;
}

}  // namespace sepclass::upclosure
