#include "sepclass/pairing.hpp"

#include <algorithm>
#include <string>

namespace sepclass {
namespace {

Nat cube(Nat n) { return n * n * n; }

Nat integer_cube_root(Nat v) {
  Nat r = 0;
  while (cube(r + 1) <= v) ++r;
  return r;
}

void check_column(Nat n) {
  if (n > PairingScheme::kMaxColumn) {
    throw Error(ErrorKind::InvalidArgument,
                "column " + std::to_string(n) + " exceeds the supported range");
  }
}

}  // namespace

Nat PairingScheme::least_free_from(Nat v) {
  std::vector<Nat> path;
  while (inverse_.count(v) != 0) {
    path.push_back(v);
    auto it = skip_.find(v);
    v = it == skip_.end() ? v + 1 : it->second;
  }
  for (Nat p : path) skip_[p] = v;
  return v;
}

void PairingScheme::assign_next() {
  const Nat n = next_n_;
  const Nat i = diagonal_ - n;
  const Nat code = least_free_from(cube(n));
  if (columns_.size() <= n) columns_.resize(n + 1);
  columns_[n].push_back(code);
  inverse_.emplace(code, ColumnIndex{n, i});
  skip_[code] = code + 1;
  if (n == 0) {
    ++diagonal_;
    next_n_ = diagonal_;
  } else {
    --next_n_;
  }
}

void PairingScheme::extend_through_diagonal(Nat d) {
  while (diagonal_ <= d) assign_next();
}

Nat PairingScheme::pair(Nat n, Nat i) {
  check_column(n);
  std::lock_guard lock(mu_);
  extend_through_diagonal(n + i);
  return columns_[n][i];
}

std::optional<ColumnIndex> PairingScheme::unpair(Nat code) {
  std::lock_guard lock(mu_);
  const Nat k = integer_cube_root(code);
  for (;;) {
    if (auto it = inverse_.find(code); it != inverse_.end()) return it->second;
    // Codes in column n are increasing in i and never below n^3, so once every
    // column n <= k has passed `code` the answer is final.
    bool decided = columns_.size() > k;
    for (Nat n = 0; decided && n <= k; ++n) {
      decided = !columns_[n].empty() && columns_[n].back() > code;
    }
    if (decided) return std::nullopt;
    extend_through_diagonal(diagonal_);
  }
}

std::optional<ColumnIndex> PairingScheme::unpair_within(Nat code, Nat n_max, Nat i_max) {
  check_column(n_max);
  std::lock_guard lock(mu_);
  extend_through_diagonal(n_max + i_max);
  auto it = inverse_.find(code);
  if (it == inverse_.end() || it->second.n > n_max || it->second.i > i_max) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<ColumnIndex> PairingScheme::column_code(Nat code) {
  const Nat k = integer_cube_root(code);
  // Only columns n <= cbrt(code) can hold `code`; bound i by their widths.
  auto hit = unpair_within(code, k, k * k);
  if (!hit || hit->i > hit->n * hit->n) return std::nullopt;
  return hit;
}

Nat PairingScheme::column_ceiling(Nat n_max) {
  check_column(n_max);
  {
    std::lock_guard lock(mu_);
    if (n_max < ceiling_cache_.size()) return ceiling_cache_[n_max];
  }
  std::vector<Nat> prefix;
  Nat best = 0;
  for (Nat n = 0; n <= n_max; ++n) {
    best = std::max(best, pair(n, n * n));
    prefix.push_back(best);
  }
  std::lock_guard lock(mu_);
  if (ceiling_cache_.size() < prefix.size()) ceiling_cache_ = std::move(prefix);
  return best;
}

PairingScheme& default_pairing() {
  static PairingScheme scheme;
  return scheme;
}

}  // namespace sepclass
