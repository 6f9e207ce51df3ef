#pragma once

// Disjoint c.e. A, B with B ≡T C: P_n codes n ∈ C by putting one column
// element ⟨n, i⟩ (i < n²+1) into B, and R_e keeps axioms m ∈ V_e^{W_e↾γ}
// whose witnesses x are blocked from B and promoted into A when m enters K.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sepclass/functionals.hpp"
#include "sepclass/pairing.hpp"
#include "sepclass/report.hpp"
#include "sepclass/stage_set.hpp"

namespace sepclass::twodegrees {

struct Scenario {
  Nat horizon = 0;
  StageSet c, k;
  // R_e exists for e < w.size().
  std::vector<StageSet> w;
  std::vector<OracleProgram> phi;
  // Census and round trips look at columns n <= columns.
  Nat columns = 10;
};

enum class AxiomStatus { Live, Invalidated, Promoted };
const char* to_string(AxiomStatus s);

struct Axiom {
  Nat e = 0, m = 0;
  Nat gamma = 0;
  std::vector<bool> prefix;  // W_e↾γ at creation
  Nat x = 0;
  Nat created_at = 0;
  AxiomStatus status = AxiomStatus::Live;
  std::optional<Nat> ended_at;  // invalidation or promotion stage
};

struct Firing {
  Nat n = 0, i = 0;
  Nat stage = 0;
};

struct Block {
  Nat x = 0;
  std::size_t axiom = 0;  // index into Trace::axioms
};

struct Trace {
  Nat horizon = 0;
  StageSet a, b;
  std::vector<Axiom> axioms;
  std::vector<Firing> firings;
  // blocks[s]: elements blocked from B at stage s, with their axioms.
  std::vector<std::vector<Block>> blocks;
};

/// W_e↾γ at stage s equals the prefix recorded when the axiom was made.
bool prefix_intact(const Axiom& ax, const StageSet& w, Nat s);

struct Choice {
  Nat x = 0;
  Nat gamma = 0;
};

/// Least (γ, x), γ first: x > column_ceiling(max(e, m)), x <= s, x ∉ B_s,
/// Φ^{W_e↾γ}(y)[s]↓ for y <= x and Φ^{W_e↾γ}(x)[s] = 0.
std::optional<Choice> search_witness(const OracleProgram& phi, const StageSet& w, const StageSet& b,
                                     Nat e, Nat m, Nat s);

/// One stage of the construction on an in-progress trace.
class Stepper {
 public:
  explicit Stepper(const Scenario& sc);

  /// Runs stage s = current() + 1: R_e for e <= s in order, then P_n for every
  /// n entering C at s, in order.
  void step();
  Nat current() const noexcept { return stage_; }
  const Trace& trace() const noexcept { return tr_; }
  Trace take() { return std::move(tr_); }

  /// Elements blocked at the current stage.
  bool blocked(Nat x) const;

 private:
  void r_step(Nat e, Nat s);
  void p_step(Nat n, Nat s);
  void record_blocks(Nat s);

  const Scenario& sc_;
  Nat stage_ = 0;
  Trace tr_;
  // live_[e][m]: index of the live axiom, if any.
  std::vector<std::vector<std::optional<std::size_t>>> live_;
  std::set<std::pair<Nat, Nat>> promoted_;
};

/// Throws HardFault when a step the proof says cannot happen does (promotion of
/// an x already in B, or P_n finding no eligible i < n²+1).
Trace run(const Scenario& sc);

/// #{i < n²+1 : ⟨n,i⟩ ∈ A_s or blocked at s}.
Nat block_census(const Trace& tr, Nat n, Nat s);

struct CubeCount {
  Nat a = 0, b = 0;
};
/// |A_s ∩ [0, k³)| and |B_s ∩ [0, k³)|.
CubeCount cube_census(const Trace& tr, Nat k, Nat s);

struct Decoded {
  bool bit = false;
  // Stage at which the answer became visible in the enumeration.
  std::optional<Nat> settled_at;
};

/// n ∈ C iff ∃ i <= n²+1 with ⟨n,i⟩ ∈ B, at the horizon.
Decoded decode_c_from_b(const StageSet& b, Nat n, Nat horizon);

enum class BDecode { Out, In, NotSettled };
/// Is `query` in B: 0 off the columns or when n ∉ C, otherwise wait for the
/// column's element and compare.
BDecode decode_b_from_c(const StageSet& c, const StageSet& b, Nat query, Nat horizon);

VerificationReport verify(const Scenario& sc, const Trace& tr);

}  // namespace sepclass::twodegrees
