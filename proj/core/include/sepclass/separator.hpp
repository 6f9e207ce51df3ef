#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sepclass/types.hpp"

namespace sepclass {

/// A finite binary string read as a subset of [0, length()).
class SeparatorSnapshot {
 public:
  SeparatorSnapshot() = default;
  explicit SeparatorSnapshot(std::vector<bool> bits) : bits_(std::move(bits)) {}
  explicit SeparatorSnapshot(Nat length) : bits_(length, false) {}

  /// Parses a string of '0'/'1' characters.
  static SeparatorSnapshot from_string(std::string_view text);
  /// Characteristic string of `members` on [0, length).
  static SeparatorSnapshot of_set(const std::set<Nat>& members, Nat length);

  Nat length() const noexcept { return bits_.size(); }
  bool operator[](Nat i) const { return bits_.at(i); }
  void set(Nat i, bool v) { bits_.at(i) = v; }
  const std::vector<bool>& bits() const noexcept { return bits_; }
  std::string to_string() const;

  friend bool operator==(const SeparatorSnapshot&, const SeparatorSnapshot&) = default;

 private:
  std::vector<bool> bits_;
};

/// True iff A ⊆ X and X ∩ B = ∅. Throws DomainMismatch when A or B reaches
/// past X's length.
bool is_separator(const SeparatorSnapshot& x, const std::set<Nat>& a,
                  const std::set<Nat>& b);

}  // namespace sepclass
