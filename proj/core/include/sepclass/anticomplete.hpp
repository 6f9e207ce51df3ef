#pragma once

// Construction of disjoint c.e. sets A >=wtt B, with an auxiliary set D, such
// that no separator of A and B computes D. Strategies N_k keep a hole above k;
// strategies R_e diagonalize against Φ_e computing D from a separator.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sepclass/fresh.hpp"
#include "sepclass/functionals.hpp"
#include "sepclass/report.hpp"
#include "sepclass/stage_set.hpp"

namespace sepclass::anticomplete {

/// Priority position p: even p is N_{p/2}, odd p is R_{(p-1)/2}.
struct StrategyRef {
  enum class Kind { N, R };
  Kind kind = Kind::N;
  Nat index = 0;

  static StrategyRef at(Nat position);
  /// Parses "N3" / "R0".
  static StrategyRef parse(const std::string& text);
  Nat position() const { return kind == Kind::N ? 2 * index : 2 * index + 1; }
  std::string name() const;

  friend bool operator==(const StrategyRef&, const StrategyRef&) = default;
};

struct NStrategyState {
  Nat k = 0;
  std::optional<Nat> satisfied_at;
  Nat restraint = 0;
};

struct RStrategyState {
  enum class Phase { Claiming, Searching };
  Nat e = 0;
  Nat restraint = 0;  // stage of the last initialization
  std::optional<Nat> claimed_n;
  Phase phase = Phase::Claiming;
};

/// Sets as seen at stage s (entries stamped <= s).
struct StageView {
  const StageSet& a;
  const StageSet& b;
  const StageSet& d;
  Nat stage = 0;

  bool in_a(Nat x) const { return a.contains_at(x, Stage{stage}); }
  bool in_b(Nat x) const { return b.contains_at(x, Stage{stage}); }
  bool in_d(Nat x) const { return d.contains_at(x, Stage{stage}); }
};

/// Lexicographically least σ of length s with Φ^σ↾(n+1)[s] = D_s↾(n+1) and
/// σ consistent with A_s (ones) and B_s (zeros).
std::optional<std::vector<bool>> find_sigma(const OracleProgram& phi, const StageView& view,
                                            Nat n);

/// Acts exactly once between initializations, at the first stage s > k.
bool n_strategy_step(NStrategyState& st, Nat s);

struct RAction {
  std::vector<bool> sigma;
  Pos m = -1;  // -1 when no m >= r qualified
  std::vector<Nat> into_a;
  std::vector<Nat> into_b;
  Nat into_d = 0;
};

/// One loop iteration for R_e at stage s with a claimed n. Returns nullopt when
/// no σ exists yet; the strategy keeps its claim and keeps searching.
std::optional<RAction> r_strategy_step(RStrategyState& st, const StageView& view,
                                       const OracleProgram& phi);

struct Event {
  enum class Kind { Claim, NAct, RAct, Init };
  Kind kind = Kind::Claim;
  Nat stage = 0;
  // Acting strategy; for Init, the first initialized position (all lower
  // positions are initialized with it).
  Nat position = 0;
  Nat restraint = 0;
  Nat n = 0;
  std::string sigma;
  Pos m = -1;
  std::vector<Nat> into_a;
  std::vector<Nat> into_b;
};

const char* to_string(Event::Kind kind);

struct Trace {
  Nat horizon = 0;
  std::vector<Event> events;
};

/// Scripted adversary: Φ_e for finitely many e; every other Φ_e is empty.
struct Scenario {
  Nat horizon = 1000;
  std::map<Nat, OracleProgram> phi;

  const OracleProgram& program(Nat e) const;
};

class Construction {
 public:
  explicit Construction(const Scenario& scenario);

  /// Runs stage s = stage(): the first s strategies in priority order. Entries
  /// made here are stamped s + 1.
  void run_stage();
  void run_to_horizon();

  Nat stage() const noexcept { return stage_; }
  const StageSet& a() const noexcept { return a_; }
  const StageSet& b() const noexcept { return b_; }
  const StageSet& d() const noexcept { return d_; }
  const Trace& trace() const noexcept { return trace_; }
  const NStrategyState& n_state(Nat k) const { return n_.at(k); }
  const RStrategyState& r_state(Nat e) const { return r_.at(e); }

 private:
  void initialize_below(Nat position, Nat s);
  void record(Event ev);

  const Scenario& scenario_;
  Nat stage_ = 0;
  StageSet a_, b_, d_;
  std::vector<NStrategyState> n_;
  std::vector<RStrategyState> r_;
  FreshCounter fresh_;
  Trace trace_;
};

Trace run(const Scenario& scenario);

/// Checks every stage of a trace against the construction's promises and the
/// finite skeleton of the finite-injury claim.
VerificationReport verify(const Scenario& scenario, const Trace& trace);

/// Final sets rebuilt from the trace's enumeration records.
struct RebuiltSets {
  StageSet a, b, d;
};
RebuiltSets rebuild_sets(const Trace& trace);

}  // namespace sepclass::anticomplete
