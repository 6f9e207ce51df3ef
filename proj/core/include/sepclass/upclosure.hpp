#pragma once

// Separators of every Turing degree above A for a wtt-equivalent disjoint pair
// A, B with infinitely many holes. Z copies A on block n when n is not in C and
// copies co-B otherwise; the blocks come from the m-sequence of the case.

#include <optional>
#include <string>
#include <vector>

#include "sepclass/functionals.hpp"
#include "sepclass/report.hpp"
#include "sepclass/separator.hpp"
#include "sepclass/stage_set.hpp"

namespace sepclass::upclosure {

struct CaseTag {
  enum class Kind { Case1, Case2 };
  Kind kind = Kind::Case2;
  Nat k = 0;  // case 1: no x >= k has (x, f(x)] inside A u B

  static CaseTag case1(Nat k) { return {Kind::Case1, k}; }
  static CaseTag case2() { return {Kind::Case2, 0}; }
  std::string name() const;
};

struct Scenario {
  Nat horizon = 0;
  // Audits and searches only look at [0, domain).
  Nat domain = 0;
  StageSet a, b, c;
  UseBoundedOperator gamma;  // Γ^A = B
  UseBoundedOperator delta;  // Δ^B = A
  UseBound f;
  CaseTag declared;
  Nat blocks = 8;
};

/// (lo, hi] ⊆ A_s ∪ B_s.
bool covered(const StageSet& a, const StageSet& b, Stage s, Pos lo, Pos hi);

/// Every x < domain with f(x) < domain and (x, f(x)] ⊆ A ∪ B at stage s.
std::vector<Nat> covered_points(const StageSet& a, const StageSet& b, const UseBound& f,
                                Stage s, Nat domain);

/// Problems with the theorem's hypotheses at the horizon: A ∩ B ≠ ∅, Γ^A ≠ B or
/// Δ^B ≠ A somewhere below the domain, no hole in the upper half of the domain.
std::vector<std::string> audit_hypotheses(const Scenario& sc);
/// Throws Hypothesis with the first problem found.
void require_hypotheses(const Scenario& sc);

/// Declared case against the horizon snapshot. case1(k): no covered point
/// x >= k; case2: at least ceil(domain / 10) covered points.
bool classify_case(const StageSet& a, const StageSet& b, const UseBound& f, Nat horizon,
                   Nat domain, const CaseTag& declared);

struct MSequence {
  std::vector<Pos> values;

  std::size_t blocks() const { return values.empty() ? 0 : values.size() - 1; }
  bool strictly_increasing() const;
};

struct MSequenceResult {
  MSequence seq;
  // Case 2: index of the first m_n with no witness below the bound table.
  std::optional<Nat> not_yet;
};

/// `count` values m_0, m_1, ... computed from the stage-s snapshots.
MSequenceResult m_sequence(const CaseTag& tag, const StageSet& a, const StageSet& b, Stage s,
                           const UseBound& f, Nat count);

/// Z on [0, length): block n = (m_n, m_{n+1}] copies A_s if n ∉ C_s, co-B_s
/// otherwise; positions <= m_0 copy A_s.
SeparatorSnapshot encode_separator(const StageSet& c, const MSequence& m, const StageSet& a,
                                   const StageSet& b, Stage s, Nat length);

struct BlockAgreement {
  bool with_a = false;
  bool with_co_b = false;
};

/// Z on (lo, hi] against A_s and co-B_s.
BlockAgreement block_agreement(const SeparatorSnapshot& z, const StageSet& a, const StageSet& b,
                               Stage s, Pos lo, Pos hi);

struct Decoded {
  bool bit = false;
  Nat stage = 0;
};

/// First stage where Z agrees with exactly one of A_s, co-B_s on (lo, hi].
/// Throws HorizonExceeded ("undecided at horizon") when none does.
Decoded decode_block(const SeparatorSnapshot& z, const StageSet& a, const StageSet& b, Pos lo,
                     Pos hi, Nat horizon);

struct Recovered {
  Pos value = 0;
  Nat stage = 0;
};

/// The stage search computing m_{n+1} from Z and m_0..m_n (case 2). Throws
/// HorizonExceeded ("not settled") when no stage up to the horizon qualifies.
Recovered recover_m_next(const SeparatorSnapshot& z, const StageSet& a, const StageSet& b,
                         const UseBoundedOperator& gamma, const UseBoundedOperator& delta,
                         const UseBound& f, const MSequence& prefix, Nat horizon);

struct BlockRecord {
  Nat n = 0;
  Pos lo = 0, hi = 0;
  bool in_c = false;
  std::optional<Decoded> decoded;
  std::optional<Recovered> recovered;  // case 2: recovery of hi from m_0..m_n
  std::string error;
  // Stages where Z agreed with A_s and co-B_s at once.
  std::vector<Nat> double_agreement;
};

struct Trace {
  Nat horizon = 0;
  Nat domain = 0;
  CaseTag declared;
  bool case_consistent = false;
  MSequence m;
  std::optional<Nat> m_not_yet;
  SeparatorSnapshot z;
  std::vector<BlockRecord> blocks;
};

/// Audits the hypotheses (throws Hypothesis), then encodes and decodes.
Trace run(const Scenario& sc);

VerificationReport verify(const Scenario& sc, const Trace& trace);

}  // namespace sepclass::upclosure
