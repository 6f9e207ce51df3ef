#include "sepclass/functionals.hpp"

#include <algorithm>
#include <tuple>

namespace sepclass {

Guard::Guard(std::vector<GuardLiteral> literals) : lits_(std::move(literals)) {
  std::sort(lits_.begin(), lits_.end(), [](const auto& a, const auto& b) {
    return std::tie(a.pos, a.bit) < std::tie(b.pos, b.bit);
  });
  std::vector<GuardLiteral> unique;
  for (const auto& lit : lits_) {
    if (!unique.empty() && unique.back().pos == lit.pos) {
      if (unique.back().bit != lit.bit) {
        throw Error(ErrorKind::Schema, "guard constrains position " +
                                           std::to_string(lit.pos) + " to both bits");
      }
      continue;
    }
    unique.push_back(lit);
  }
  lits_ = std::move(unique);
}

bool Guard::satisfied_by(const std::vector<bool>& oracle) const {
  for (const auto& lit : lits_) {
    if (lit.pos >= oracle.size() || oracle[lit.pos] != lit.bit) return false;
  }
  return true;
}

bool Guard::compatible_with(const Guard& other) const {
  auto a = lits_.begin();
  auto b = other.lits_.begin();
  while (a != lits_.end() && b != other.lits_.end()) {
    if (a->pos < b->pos) {
      ++a;
    } else if (b->pos < a->pos) {
      ++b;
    } else {
      if (a->bit != b->bit) return false;
      ++a;
      ++b;
    }
  }
  return true;
}

void OracleProgram::add_rule(const Rule& rule) {
  add_block(RuleBlock{rule.guard, rule.input, {rule.output}, rule.use, rule.available_at});
}

void OracleProgram::add_block(RuleBlock block) {
  if (block.outputs.empty()) {
    throw Error(ErrorKind::Schema, "rule block covers no inputs");
  }
  const std::size_t id = blocks_.size();
  if (block.outputs.size() == 1) {
    if (by_input_.size() <= block.first_input) by_input_.resize(block.first_input + 1);
    by_input_[block.first_input].push_back(id);
  } else {
    wide_.push_back(id);
  }
  blocks_.push_back(std::move(block));
}

std::vector<std::size_t> OracleProgram::blocks_for(Nat y) const {
  std::vector<std::size_t> out;
  if (y < by_input_.size()) out = by_input_[y];
  for (std::size_t id : wide_) {
    if (blocks_[id].covers(y)) out.push_back(id);
  }
  return out;
}

void OracleProgram::validate() const {
  for (const auto& b : blocks_) {
    if (b.guard.span() > b.use) {
      throw Error(ErrorKind::Schema, "rule for input " + std::to_string(b.first_input) +
                                         " reads oracle position " +
                                         std::to_string(b.guard.span() - 1) +
                                         " at or beyond its use " + std::to_string(b.use));
    }
  }
  auto check_pair = [&](const RuleBlock& a, const RuleBlock& b) {
    const Nat lo = std::max(a.first_input, b.first_input);
    const Nat hi = std::min(a.last_input(), b.last_input());
    if (lo > hi || !a.guard.compatible_with(b.guard)) return;
    for (Nat y = lo; y <= hi; ++y) {
      if (a.output_for(y) != b.output_for(y) || a.use != b.use) {
        throw Error(ErrorKind::Schema,
                    "nondeterministic program: compatible rules for input " +
                        std::to_string(y) + " disagree on output or use");
      }
    }
  };
  for (const auto& ids : by_input_) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        check_pair(blocks_[ids[i]], blocks_[ids[j]]);
      }
    }
  }
  for (std::size_t w = 0; w < wide_.size(); ++w) {
    const auto& wb = blocks_[wide_[w]];
    for (std::size_t v = w + 1; v < wide_.size(); ++v) check_pair(wb, blocks_[wide_[v]]);
    const Nat hi = std::min<Nat>(wb.last_input() + 1, by_input_.size());
    for (Nat y = wb.first_input; y < hi; ++y) {
      for (std::size_t id : by_input_[y]) check_pair(wb, blocks_[id]);
    }
  }
}

Evaluation OracleProgram::evaluate(const std::vector<bool>& oracle, Nat y, Nat s) const {
  const RuleBlock* best = nullptr;
  auto consider = [&](std::size_t id) {
    const auto& b = blocks_[id];
    if (b.available_at > s || b.use > oracle.size() || !b.guard.satisfied_by(oracle)) return;
    if (best == nullptr || std::tie(b.use, b.available_at) < std::tie(best->use, best->available_at)) {
      best = &b;
    }
  };
  if (y < by_input_.size()) {
    for (std::size_t id : by_input_[y]) consider(id);
  }
  for (std::size_t id : wide_) {
    if (blocks_[id].covers(y)) consider(id);
  }
  if (best == nullptr) return Evaluation::diverged();
  return {true, best->output_for(y), best->use};
}

std::vector<Nat> OracleProgram::uses() const {
  std::vector<Nat> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.use);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Nat> OracleProgram::max_input() const {
  std::optional<Nat> best;
  for (const auto& b : blocks_) {
    if (!best || b.last_input() > *best) best = b.last_input();
  }
  return best;
}

UseBound::UseBound(std::vector<Nat> table) : table_(std::move(table)) {
  for (Nat x = 0; x < table_.size(); ++x) {
    if (table_[x] <= x) {
      throw Error(ErrorKind::Schema, "use bound must satisfy f(x) > x; fails at x = " +
                                         std::to_string(x));
    }
    if (x > 0 && table_[x] < table_[x - 1]) {
      throw Error(ErrorKind::Schema,
                  "use bound must be monotone; fails at x = " + std::to_string(x));
    }
  }
}

Nat UseBound::operator()(Nat x) const {
  if (!defined(x)) {
    throw Error(ErrorKind::BoundExhausted,
                "bound table exhausted at x = " + std::to_string(x));
  }
  return table_[x];
}

UseBoundedOperator::UseBoundedOperator(OracleProgram program, UseBound bound)
    : program_(std::move(program)), bound_(std::move(bound)) {
  for (const auto& b : program_.blocks()) {
    for (Nat y = b.first_input; y <= b.last_input(); ++y) {
      if (!bound_.defined(y)) {
        throw Error(ErrorKind::Schema,
                    "operator rule for input " + std::to_string(y) + " has no use bound");
      }
      if (b.use > bound_(y)) {
        throw Error(ErrorKind::Schema, "operator rule for input " + std::to_string(y) +
                                           " exceeds its use bound");
      }
    }
  }
}

std::optional<bool> wtt_apply(const UseBoundedOperator& op, const std::set<Nat>& oracle,
                              Nat x, Nat s) {
  const Nat len = op.bound()(x);
  std::vector<bool> bits(len, false);
  for (Nat e : oracle) {
    if (e >= len) break;
    bits[e] = true;
  }
  const auto ev = op.program().evaluate(bits, x, s);
  if (!ev.halted) return std::nullopt;
  return ev.output;
}

bool wtt_agrees_below(const UseBoundedOperator& op, const std::set<Nat>& oracle,
                      const std::set<Nat>& target, Nat x, Nat s) {
  for (Nat y = 0; y <= x; ++y) {
    const auto bit = wtt_apply(op, oracle, y, s);
    if (!bit || *bit != (target.count(y) != 0)) return false;
  }
  return true;
}

}  // namespace sepclass
