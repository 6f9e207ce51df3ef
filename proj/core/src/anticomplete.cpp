#include "sepclass/anticomplete.hpp"

#include <algorithm>
#include <set>

namespace sepclass::anticomplete {

StrategyRef StrategyRef::at(Nat position) {
  if (position % 2 == 0) return {Kind::N, position / 2};
  return {Kind::R, (position - 1) / 2};
}

StrategyRef StrategyRef::parse(const std::string& text) {
  if (text.size() < 2 || (text[0] != 'N' && text[0] != 'R')) {
    throw Error(ErrorKind::Parse, "bad strategy name '" + text + "'");
  }
  Nat idx = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw Error(ErrorKind::Parse, "bad strategy name '" + text + "'");
    }
    idx = idx * 10 + static_cast<Nat>(text[i] - '0');
  }
  return {text[0] == 'N' ? Kind::N : Kind::R, idx};
}

std::string StrategyRef::name() const {
  return (kind == Kind::N ? "N" : "R") + std::to_string(index);
}

const char* to_string(Event::Kind kind) {
  switch (kind) {
    case Event::Kind::Claim: return "claim";
    case Event::Kind::NAct: return "n_act";
    case Event::Kind::RAct: return "r_act";
    case Event::Kind::Init: return "init";
  }
  return "?";
}

const OracleProgram& Scenario::program(Nat e) const {
  static const OracleProgram kEmpty;
  auto it = phi.find(e);
  return it == phi.end() ? kEmpty : it->second;
}

namespace {

// Partial assignment of σ: -1 unknown, otherwise the bit.
using Assignment = std::vector<signed char>;

bool block_compatible(const RuleBlock& b, const Assignment& as) {
  for (const auto& lit : b.guard.literals()) {
    const auto v = as[lit.pos];
    if (v >= 0 && static_cast<bool>(v) != lit.bit) return false;
  }
  return true;
}

bool block_satisfied(const RuleBlock& b, const Assignment& as) {
  for (const auto& lit : b.guard.literals()) {
    const auto v = as[lit.pos];
    if (v < 0 || static_cast<bool>(v) != lit.bit) return false;
  }
  return true;
}

// Each constraint is a disjunction of rule guards (conjunctions of literals).
class GuardSolver {
 public:
  GuardSolver(const OracleProgram& phi, std::vector<std::vector<std::size_t>> constraints,
              Assignment assignment)
      : phi_(phi), constraints_(std::move(constraints)), as_(std::move(assignment)) {}

  bool satisfiable() { return search(); }
  Assignment& assignment() { return as_; }

 private:
  bool search() {
    const std::vector<std::size_t>* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& c : constraints_) {
      std::size_t count = 0;
      bool done = false;
      for (std::size_t id : c) {
        const auto& b = phi_.blocks()[id];
        if (block_satisfied(b, as_)) {
          done = true;
          break;
        }
        if (block_compatible(b, as_)) ++count;
      }
      if (done) continue;
      if (count == 0) return false;
      if (best == nullptr || count < best_count) {
        best = &c;
        best_count = count;
      }
    }
    if (best == nullptr) return true;
    for (std::size_t id : *best) {
      const auto& b = phi_.blocks()[id];
      if (!block_compatible(b, as_)) continue;
      std::vector<Nat> changed;
      for (const auto& lit : b.guard.literals()) {
        if (as_[lit.pos] < 0) {
          as_[lit.pos] = lit.bit ? 1 : 0;
          changed.push_back(lit.pos);
        }
      }
      const bool ok = search();
      for (Nat p : changed) as_[p] = -1;
      if (ok) return true;
    }
    return false;
  }

  const OracleProgram& phi_;
  std::vector<std::vector<std::size_t>> constraints_;
  Assignment as_;
};

}  // namespace

std::optional<std::vector<bool>> find_sigma(const OracleProgram& phi, const StageView& view,
                                            Nat n) {
  if (phi.empty()) return std::nullopt;
  const Nat s = view.stage;
  Assignment forced(s, -1);
  for (Nat x = 0; x < s; ++x) {
    if (view.in_a(x)) forced[x] = 1;
    if (view.in_b(x)) forced[x] = 0;
  }
  std::set<std::vector<std::size_t>> constraints;
  for (Nat y = 0; y <= n; ++y) {
    const bool want = view.in_d(y);
    std::vector<std::size_t> cands;
    bool trivially_met = false;
    for (std::size_t id : phi.blocks_for(y)) {
      const auto& b = phi.blocks()[id];
      if (b.available_at > s || b.use > s || b.output_for(y) != want) continue;
      if (!block_compatible(b, forced)) continue;
      if (block_satisfied(b, forced)) {
        trivially_met = true;
        break;
      }
      cands.push_back(id);
    }
    if (trivially_met) continue;
    if (cands.empty()) return std::nullopt;
    std::sort(cands.begin(), cands.end());
    constraints.insert(std::move(cands));
  }
  std::set<Nat> positions;
  for (const auto& c : constraints) {
    for (std::size_t id : c) {
      for (const auto& lit : phi.blocks()[id].guard.literals()) {
        if (forced[lit.pos] < 0) positions.insert(lit.pos);
      }
    }
  }
  GuardSolver solver(phi, {constraints.begin(), constraints.end()}, forced);
  if (!solver.satisfiable()) return std::nullopt;
  // Fix free positions left to right, preferring 0.
  for (Nat p : positions) {
    solver.assignment()[p] = 0;
    if (!solver.satisfiable()) solver.assignment()[p] = 1;
  }
  std::vector<bool> sigma(s, false);
  for (Nat x = 0; x < s; ++x) sigma[x] = solver.assignment()[x] == 1;
  return sigma;
}

bool n_strategy_step(NStrategyState& st, Nat s) {
  if (st.satisfied_at || s <= st.k) return false;
  st.satisfied_at = s;
  st.restraint = s + 1;
  return true;
}

std::optional<RAction> r_strategy_step(RStrategyState& st, const StageView& view,
                                       const OracleProgram& phi) {
  if (!st.claimed_n) {
    throw Error(ErrorKind::InvalidArgument, "R-strategy searched without a claimed number");
  }
  st.phase = RStrategyState::Phase::Searching;
  auto sigma = find_sigma(phi, view, *st.claimed_n);
  if (!sigma) return std::nullopt;

  RAction act;
  act.into_d = *st.claimed_n;
  const Nat s = view.stage;
  for (Nat x = st.restraint; x < s; ++x) {
    if ((*sigma)[x] && !view.in_a(x)) {
      act.m = static_cast<Pos>(x);
      break;
    }
  }
  if (act.m >= 0) {
    for (Nat x = static_cast<Nat>(act.m); x < s; ++x) {
      if ((*sigma)[x]) {
        if (!view.in_a(x)) act.into_a.push_back(x);
      } else if (!view.in_b(x)) {
        act.into_b.push_back(x);
      }
    }
  }
  act.sigma = std::move(*sigma);
  st.claimed_n.reset();
  st.phase = RStrategyState::Phase::Claiming;
  return act;
}

Construction::Construction(const Scenario& scenario)
    : scenario_(scenario),
      a_(scenario.horizon),
      b_(scenario.horizon),
      d_(scenario.horizon),
      n_(scenario.horizon / 2 + 1),
      r_(scenario.horizon / 2 + 1) {
  trace_.horizon = scenario.horizon;
  for (Nat k = 0; k < n_.size(); ++k) n_[k].k = k;
  for (Nat e = 0; e < r_.size(); ++e) r_[e].e = e;
}

void Construction::record(Event ev) {
  fresh_.mention(ev.stage);
  fresh_.mention(ev.restraint);
  fresh_.mention(ev.n);
  for (Nat x : ev.into_a) fresh_.mention(x);
  for (Nat x : ev.into_b) fresh_.mention(x);
  trace_.events.push_back(std::move(ev));
}

void Construction::initialize_below(Nat position, Nat s) {
  const Nat restraint = s + 1;
  for (Nat q = position + 1; q < 2 * n_.size(); ++q) {
    const auto ref = StrategyRef::at(q);
    if (ref.kind == StrategyRef::Kind::N) {
      n_[ref.index].satisfied_at.reset();
      n_[ref.index].restraint = 0;
    } else {
      auto& r = r_[ref.index];
      r.restraint = restraint;
      r.claimed_n.reset();
      r.phase = RStrategyState::Phase::Claiming;
    }
  }
  Event ev;
  ev.kind = Event::Kind::Init;
  ev.stage = s;
  ev.position = position + 1;
  ev.restraint = restraint;
  record(std::move(ev));
}

void Construction::run_stage() {
  const Nat s = stage_;
  if (s >= scenario_.horizon) {
    throw Error(ErrorKind::HorizonExceeded, "construction already at its horizon");
  }
  fresh_.mention(s + 1);
  for (Nat p = 0; p < s; ++p) {
    const auto ref = StrategyRef::at(p);
    if (ref.kind == StrategyRef::Kind::N) {
      auto& st = n_[ref.index];
      if (n_strategy_step(st, s)) {
        Event ev;
        ev.kind = Event::Kind::NAct;
        ev.stage = s;
        ev.position = p;
        ev.restraint = st.restraint;
        record(std::move(ev));
        initialize_below(p, s);
      }
      continue;
    }
    auto& st = r_[ref.index];
    if (!st.claimed_n) {
      st.claimed_n = fresh_.fresh();
      st.phase = RStrategyState::Phase::Searching;
      Event ev;
      ev.kind = Event::Kind::Claim;
      ev.stage = s;
      ev.position = p;
      ev.restraint = st.restraint;
      ev.n = *st.claimed_n;
      record(std::move(ev));
    }
    const StageView view{a_, b_, d_, s};
    auto act = r_strategy_step(st, view, scenario_.program(ref.index));
    if (!act) continue;
    const Stage stamp{s + 1};
    for (Nat x : act->into_a) a_.enumerate(x, stamp);
    for (Nat x : act->into_b) b_.enumerate(x, stamp);
    d_.enumerate(act->into_d, stamp);
    Event ev;
    ev.kind = Event::Kind::RAct;
    ev.stage = s;
    ev.position = p;
    ev.restraint = st.restraint;
    ev.n = act->into_d;
    ev.sigma.reserve(act->sigma.size());
    for (bool bit : act->sigma) ev.sigma.push_back(bit ? '1' : '0');
    ev.m = act->m;
    ev.into_a = std::move(act->into_a);
    ev.into_b = std::move(act->into_b);
    record(std::move(ev));
    initialize_below(p, s);
  }
  ++stage_;
}

void Construction::run_to_horizon() {
  while (stage_ < scenario_.horizon) run_stage();
}

Trace run(const Scenario& scenario) {
  Construction c(scenario);
  c.run_to_horizon();
  return c.trace();
}

}  // namespace sepclass::anticomplete
