#pragma once

#include <mutex>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sepclass/types.hpp"

namespace sepclass {

struct ColumnIndex {
  Nat n = 0;
  Nat i = 0;

  friend bool operator==(const ColumnIndex&, const ColumnIndex&) = default;
};

/// Injective coding of pairs (n, i) with code(n, i) >= n^3.
///
/// Pairs are visited in Cantor diagonal order (0,0), (1,0), (0,1), (2,0), ...
/// and each receives the least natural >= n^3 not yet assigned. Values are
/// materialized lazily; the object is safe to share between threads.
class PairingScheme {
 public:
  static constexpr std::string_view kId = "greedy-cantor-cube-v1";
  // Keeps n^3 comfortably inside 64 bits.
  static constexpr Nat kMaxColumn = Nat{1} << 20;

  Nat pair(Nat n, Nat i);

  /// Inverse on the image. Every natural is eventually claimed by column 0,
  /// so under this scheme the result is always engaged.
  std::optional<ColumnIndex> unpair(Nat code);

  /// The preimage of `code` when it lies in {(n, i) : n <= n_max, i <= i_max}.
  std::optional<ColumnIndex> unpair_within(Nat code, Nat n_max, Nat i_max);

  /// The preimage of `code` when it is a column element used for coding,
  /// i.e. (n, i) with i < n^2 + 1.
  std::optional<ColumnIndex> column_code(Nat code);

  /// Largest code of (n, i) over n <= n_max and i < n^2 + 1; a witness must
  /// exceed this value.
  Nat column_ceiling(Nat n_max);

 private:
  void extend_through_diagonal(Nat d);
  void assign_next();
  Nat least_free_from(Nat v);

  std::mutex mu_;
  // Position in Cantor order of the next pair to assign.
  Nat diagonal_ = 0;
  Nat next_n_ = 0;  // n of the next pair on the current diagonal (descending)
  std::vector<std::vector<Nat>> columns_;
  std::unordered_map<Nat, ColumnIndex> inverse_;
  // Path-compressed "next possibly free value" links over used values.
  std::unordered_map<Nat, Nat> skip_;
  std::vector<Nat> ceiling_cache_;
};

/// The process-wide scheme used by every construction.
PairingScheme& default_pairing();

inline Nat pair(Nat n, Nat i) { return default_pairing().pair(n, i); }
inline std::optional<ColumnIndex> unpair(Nat code) {
  return default_pairing().unpair(code);
}

}  // namespace sepclass
