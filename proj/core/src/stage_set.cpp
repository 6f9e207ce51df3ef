#include "sepclass/stage_set.hpp"

#include <algorithm>
#include <string>

namespace sepclass {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::HorizonExceeded: return "horizon exceeded";
    case ErrorKind::DomainMismatch: return "domain mismatch";
    case ErrorKind::BoundExhausted: return "bound table exhausted";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::Hypothesis: return "hypothesis violation";
    case ErrorKind::HardFault: return "hard fault";
  }
  return "unknown";
}

StageSet StageSet::from_events(const std::vector<Entry>& events, Nat horizon) {
  StageSet set(horizon);
  for (const auto& e : events) {
    if (e.stage > horizon) {
      throw Error(ErrorKind::Schema, "event (" + std::to_string(e.element) + ", " +
                                         std::to_string(e.stage) +
                                         ") is stamped past horizon " +
                                         std::to_string(horizon));
    }
    if (!set.enumerate(e.element, Stage{e.stage})) {
      throw Error(ErrorKind::Schema,
                  "element " + std::to_string(e.element) + " enumerated twice");
    }
  }
  return set;
}

void StageSet::set_horizon(Nat h) {
  for (const auto& e : events_) {
    if (e.stage > h) {
      throw Error(ErrorKind::HorizonExceeded,
                  "cannot shrink horizon below an existing event stage");
    }
  }
  horizon_ = h;
}

bool StageSet::enumerate(Nat element, Stage s) {
  if (s.value > horizon_) {
    throw Error(ErrorKind::HorizonExceeded,
                "stage " + std::to_string(s.value) + " beyond horizon " +
                    std::to_string(horizon_));
  }
  auto [it, inserted] = entry_.emplace(element, s.value);
  if (!inserted) return false;
  events_.push_back({element, s.value});
  element_bound_ = std::max(element_bound_, element + 1);
  return true;
}

bool StageSet::contains_at(Nat element, Stage s) const {
  auto it = entry_.find(element);
  return it != entry_.end() && it->second <= s.value;
}

std::optional<Nat> StageSet::entry_stage(Nat element) const {
  auto it = entry_.find(element);
  if (it == entry_.end()) return std::nullopt;
  return it->second;
}

std::set<Nat> StageSet::snapshot(Stage s) const {
  if (s.value > horizon_) {
    throw Error(ErrorKind::HorizonExceeded,
                "snapshot at stage " + std::to_string(s.value) + " beyond horizon " +
                    std::to_string(horizon_));
  }
  std::set<Nat> out;
  for (const auto& e : events_) {
    if (e.stage <= s.value) out.insert(e.element);
  }
  return out;
}

std::vector<bool> StageSet::characteristic(Stage s, Nat length) const {
  std::vector<bool> bits(length, false);
  for (const auto& e : events_) {
    if (e.stage <= s.value && e.element < length) bits[e.element] = true;
  }
  return bits;
}

}  // namespace sepclass
