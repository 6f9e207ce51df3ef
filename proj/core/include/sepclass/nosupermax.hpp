#pragma once

// Up to three attempts at a separator X of c.e. degree with X ≠* A and
// co-X ≠* B. Each attempt keeps a boundary sequence x_{-1} < x_0 < ... < x_k = s;
// odd intervals (x_{n-1}, x_n] try to put holes into X, even ones keep holes
// out. A failed attempt is certified (ℓ, k, parity, settling stage) and the
// next attempt runs on a sped-up timeline above x_ℓ.

#include <optional>
#include <string>
#include <vector>

#include "sepclass/report.hpp"
#include "sepclass/stage_set.hpp"

namespace sepclass::nosupermax {

/// x_{-1}, x_0, ..., x_k at one stage; empty while the stage has not passed
/// the attempt's base point.
struct Boundary {
  std::vector<Pos> x;  // x[0] is x_{-1}

  bool defined() const { return !x.empty(); }
  /// Largest index n with x_n defined; -2 when undefined.
  Pos last_index() const { return static_cast<Pos>(x.size()) - 2; }
  std::optional<Pos> entry(Pos n) const;
  friend bool operator==(const Boundary&, const Boundary&) = default;
};

/// Odd intervals are "in" (holes go into X), even intervals are "out".
inline bool in_type(Pos n) { return n % 2 != 0; }

/// Map from an attempt's stage t to the original stage of the scenario.
struct Timeline {
  std::vector<Nat> map;

  Nat horizon() const { return map.empty() ? 0 : map.size() - 1; }
  static Timeline identity(Nat horizon);
};

struct StageRecord {
  Nat stage = 0;  // t + 1 in the attempt's timeline
  Boundary boundary;
  std::vector<Nat> entered;  // X_{t+1} \ X_t
  std::vector<Nat> left;     // X_t \ X_{t+1}
  std::vector<Nat> w_new;    // W_{t+1} \ W_t
  // Least z in W_{t+1} \ W_t; everything above it is permitted.
  std::optional<Nat> zmin;
};

/// One attempt, stepped a stage at a time. Sets are fed as the entries that
/// appear between consecutive timeline stages.
class Attempt {
 public:
  /// `initial_a` / `initial_b` are A and B at timeline stage 0; X starts as A.
  Attempt(int index, Pos base, Nat capacity, const std::vector<Nat>& initial_a,
          const std::vector<Nat>& initial_b);

  /// Runs stage t + 1 given A_{t+1} \ A_t and B_{t+1} \ B_t.
  const StageRecord& step(const std::vector<Nat>& new_a, const std::vector<Nat>& new_b);

  int index() const noexcept { return index_; }
  Pos base() const noexcept { return base_; }
  Nat stage() const noexcept { return stage_; }
  bool in_x(Nat y) const { return y < x_.size() && x_[y]; }
  bool in_a(Nat y) const { return y < a_.size() && a_[y]; }
  bool in_b(Nat y) const { return y < b_.size() && b_[y]; }
  const Boundary& boundary() const noexcept { return boundary_; }
  const std::vector<StageRecord>& records() const noexcept { return records_; }
  Nat capacity() const noexcept { return x_.size(); }

  /// y ∉ A_{t+1} ∪ B_{t+1} and (y = t or some z < y is in W_{t+1} \ W_t).
  static bool permitted(Nat y, Nat s, bool in_a_next, bool in_b_next, std::optional<Nat> zmin);

 private:
  void grow(Nat y);
  Boundary next_boundary(Nat s, std::optional<Nat> zmin) const;

  int index_;
  Pos base_;
  Nat stage_ = 0;
  std::vector<char> x_, a_, b_;
  Boundary boundary_;
  std::vector<StageRecord> records_;
};

/// Certificate that an attempt failed: x_n settled for n <= ell from
/// settling_stage on, x_k (k = ell + 1) keeps moving, and k's parity.
struct SpeedupCertificate {
  int attempt = 1;
  Pos ell = -1;
  Pos k = 0;
  int parity = 0;
  Nat settling_stage = 0;
};

struct Outcome {
  Pos ell = -1;
  Pos k = 0;
  int parity = 0;
  Nat settling_stage = 0;
  // Per stable index n: a hole y in (x_{n-1}, x_n] with y ∈ X iff n odd.
  std::vector<std::optional<Nat>> parity_witness;
  // Per boundary index n >= -1: last stage its value changed (or was undefined).
  std::vector<Nat> last_change;
  Nat window = 0;

  SpeedupCertificate proposal(int attempt) const {
    return {attempt, ell, k, parity, settling_stage};
  }
};

struct AttemptTrace {
  int index = 1;
  Pos base = -1;
  Timeline timeline;
  std::vector<StageRecord> records;  // records[t] is stage t + 1
  std::vector<Nat> initial_x;
};

/// Boundary at timeline stage t (stage 0 is undefined).
const Boundary& boundary_at(const AttemptTrace& tr, Nat t);

/// X_{a,t} rebuilt from the change lists, as a characteristic vector.
class XReplay {
 public:
  explicit XReplay(const AttemptTrace& tr, Nat capacity);
  /// Advances to stage t (t never decreases).
  const std::vector<char>& at(Nat t);

 private:
  const AttemptTrace& tr_;
  Nat t_ = 0;
  std::vector<char> x_;
};

/// Longest prefix of boundary entries constant over the final `window` stages.
/// Throws InvalidArgument ("window exceeds horizon") when window > horizon.
Outcome detect_outcome(const AttemptTrace& tr, const StageSet& a, const StageSet& b, Nat window);

struct CertificateCheck {
  SpeedupCertificate cert;
  bool accepted = false;
  std::string reason;
  std::optional<Nat> witness_stage;  // in the certified attempt's timeline
  // On acceptance: the selected stages of the certified attempt, and the next
  // attempt's timeline (original stages).
  std::vector<Nat> selected;
  Timeline next;
};

/// Validates `cert` against the attempt trace and selects the re-indexed
/// stages greedily: stage t of the next attempt is the least u > g(t-1),
/// u >= settling, where the three speedup bullets hold for t at u.
CertificateCheck apply_speedup(const AttemptTrace& tr, const StageSet& a, const StageSet& b,
                               const SpeedupCertificate& cert, Nat window);

/// The three speedup bullets for next-attempt stage t at certified-attempt
/// stage u; returns the first violated bullet's description.
std::optional<std::string> speedup_bullets(const AttemptTrace& tr, const std::vector<char>& x_u,
                                           const StageSet& a, const StageSet& b,
                                           const SpeedupCertificate& cert, Nat t, Nat u);

struct Scenario {
  Nat horizon = 1000;
  StageSet a, b;
  // Explicit certificates, in attempt order; ignored past the first rejection.
  std::vector<SpeedupCertificate> certificates;
  // Propose certificates from detect_outcome when none is given for an attempt.
  bool auto_certify = false;
  // Final window as a fraction of each attempt's horizon, in percent.
  Nat window_percent = 20;
};

struct Trace {
  std::vector<AttemptTrace> attempts;
  std::vector<Outcome> outcomes;
  std::vector<CertificateCheck> checks;
};

/// Runs one attempt over a timeline. Attempt index outside 1..3 throws
/// InvalidArgument ("no such attempt").
AttemptTrace run_attempt(int index, Pos base, const StageSet& a, const StageSet& b,
                         const Timeline& timeline);

Trace run(const Scenario& sc);

Nat window_for(const Scenario& sc, Nat horizon);

VerificationReport verify(const Scenario& sc, const Trace& trace);

}  // namespace sepclass::nosupermax
