#pragma once

#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sepclass/types.hpp"

namespace sepclass {

struct Entry {
  Nat element = 0;
  Nat stage = 0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Append-only enumeration log of a c.e. set up to a horizon.
///
/// Snapshots are derived views: snapshot(s) holds exactly the elements whose
/// entry stage is <= s. An element enters at most once and never leaves.
class StageSet {
 public:
  StageSet() = default;
  explicit StageSet(Nat horizon) : horizon_(horizon) {}

  /// Builds from scripted (element, stage) pairs. Throws Schema on a repeated
  /// element or a stage past the horizon.
  static StageSet from_events(const std::vector<Entry>& events, Nat horizon);

  Nat horizon() const noexcept { return horizon_; }
  void set_horizon(Nat h);

  /// Records `element` entering at stage `s`; returns false (and records
  /// nothing) when the element is already present.
  bool enumerate(Nat element, Stage s);

  bool contains(Nat element) const { return entry_.count(element) != 0; }
  /// Membership in snapshot(s). Does not check the horizon.
  bool contains_at(Nat element, Stage s) const;
  std::optional<Nat> entry_stage(Nat element) const;

  /// Elements with entry stage <= s, ascending.
  std::set<Nat> snapshot(Stage s) const;
  /// Characteristic string of snapshot(s) on [0, length).
  std::vector<bool> characteristic(Stage s, Nat length) const;

  const std::vector<Entry>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  /// One past the largest element, or 0 when empty.
  Nat element_bound() const noexcept { return element_bound_; }

 private:
  Nat horizon_ = 0;
  std::vector<Entry> events_;
  std::unordered_map<Nat, Nat> entry_;
  Nat element_bound_ = 0;
};

}  // namespace sepclass
