#pragma once

#include <algorithm>

#include "sepclass/types.hpp"

namespace sepclass {

/// Source of "large" numbers for one run: 1 + the largest number mentioned so
/// far. Every issued value counts as mentioned.
class FreshCounter {
 public:
  void mention(Nat v) {
    max_ = std::max(max_, v);
    any_ = true;
  }
  void mention(Pos v) {
    if (v >= 0) mention(static_cast<Nat>(v));
  }

  Nat fresh() {
    const Nat v = any_ ? max_ + 1 : 0;
    mention(v);
    return v;
  }

 private:
  Nat max_ = 0;
  bool any_ = false;
};

}  // namespace sepclass
