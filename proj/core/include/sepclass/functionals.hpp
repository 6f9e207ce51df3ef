#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sepclass/separator.hpp"
#include "sepclass/types.hpp"

namespace sepclass {

struct GuardLiteral {
  Nat pos = 0;
  bool bit = false;

  friend bool operator==(const GuardLiteral&, const GuardLiteral&) = default;
};

/// Conjunction of oracle-bit conditions, kept sorted by position.
class Guard {
 public:
  Guard() = default;
  /// Sorts and rejects a position listed twice with different bits.
  explicit Guard(std::vector<GuardLiteral> literals);

  const std::vector<GuardLiteral>& literals() const noexcept { return lits_; }
  bool empty() const noexcept { return lits_.empty(); }
  /// One past the largest constrained position (0 for the empty guard).
  Nat span() const noexcept { return lits_.empty() ? 0 : lits_.back().pos + 1; }

  bool satisfied_by(const std::vector<bool>& oracle) const;
  /// Some oracle satisfies both guards.
  bool compatible_with(const Guard& other) const;

  friend bool operator==(const Guard&, const Guard&) = default;

 private:
  std::vector<GuardLiteral> lits_;
};

/// One computation Φ^σ(input)[s] = output with the given use, visible from
/// stage `available_at` onward.
struct Rule {
  Guard guard;
  Nat input = 0;
  bool output = false;
  Nat use = 0;
  Nat available_at = 0;
};

/// A run of rules sharing guard, use and availability over consecutive inputs
/// [first_input, first_input + outputs.size()). Scenario files may use this
/// compact form; a single rule is a block of width one.
struct RuleBlock {
  Guard guard;
  Nat first_input = 0;
  std::vector<bool> outputs;
  Nat use = 0;
  Nat available_at = 0;

  Nat last_input() const { return first_input + outputs.size() - 1; }
  bool covers(Nat y) const { return y >= first_input && y - first_input < outputs.size(); }
  bool output_for(Nat y) const { return outputs[y - first_input]; }
};

struct Evaluation {
  bool halted = false;
  bool output = false;
  Nat use = 0;

  static Evaluation diverged() { return {}; }
  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

/// Finite rule table standing in for a Turing functional. Any input with no
/// applicable rule diverges.
class OracleProgram {
 public:
  OracleProgram() = default;

  void add_rule(const Rule& rule);
  void add_block(RuleBlock block);

  /// Throws Schema on use-dishonest guards or on two compatible rules for the
  /// same input that disagree on output or use.
  void validate() const;

  /// Halts when some rule visible at stage s has a guard satisfied by the
  /// oracle and a use no longer than the oracle. Among several, the least
  /// use wins, then the least availability stage.
  Evaluation evaluate(const std::vector<bool>& oracle, Nat y, Nat s) const;
  Evaluation evaluate(const SeparatorSnapshot& oracle, Nat y, Nat s) const {
    return evaluate(oracle.bits(), y, s);
  }

  const std::vector<RuleBlock>& blocks() const noexcept { return blocks_; }
  bool empty() const noexcept { return blocks_.empty(); }
  /// Indices of blocks covering input y.
  std::vector<std::size_t> blocks_for(Nat y) const;
  /// Sorted distinct uses of all blocks.
  std::vector<Nat> uses() const;
  /// Largest input covered by any block, if any.
  std::optional<Nat> max_input() const;

 private:
  std::vector<RuleBlock> blocks_;
  // Width-one blocks indexed by input; wider blocks are scanned.
  std::vector<std::vector<std::size_t>> by_input_;
  std::vector<std::size_t> wide_;
};

/// Monotone use bound f with f(x) > x, tabulated on [0, size()).
class UseBound {
 public:
  UseBound() = default;
  /// Throws Schema unless the table is monotone and strict.
  explicit UseBound(std::vector<Nat> table);

  Nat operator()(Nat x) const;
  bool defined(Nat x) const noexcept { return x < table_.size(); }
  Nat size() const noexcept { return table_.size(); }
  const std::vector<Nat>& table() const noexcept { return table_; }

 private:
  std::vector<Nat> table_;
};

/// A wtt operator: a program whose use on input x never exceeds bound(x).
class UseBoundedOperator {
 public:
  UseBoundedOperator() = default;
  /// Throws Schema if some rule for x has use > bound(x) or x is outside the
  /// bound table.
  UseBoundedOperator(OracleProgram program, UseBound bound);

  const OracleProgram& program() const noexcept { return program_; }
  const UseBound& bound() const noexcept { return bound_; }

 private:
  OracleProgram program_;
  UseBound bound_;
};

/// Op^{oracle}(x)[s] evaluated on the oracle's characteristic string below
/// bound(x); nullopt when undefined.
std::optional<bool> wtt_apply(const UseBoundedOperator& op, const std::set<Nat>& oracle,
                              Nat x, Nat s);

/// Op^{oracle}↾(x+1)[s] = target↾(x+1), comparing bit by bit.
bool wtt_agrees_below(const UseBoundedOperator& op, const std::set<Nat>& oracle,
                      const std::set<Nat>& target, Nat x, Nat s);

}  // namespace sepclass
