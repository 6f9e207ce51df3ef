#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sepclass {

using Nat = std::uint64_t;
// Signed positions: boundary sequences and m-sequences start at -1.
using Pos = std::int64_t;

/// A construction stage. Stages are consumed in strictly increasing order from 0.
struct Stage {
  Nat value = 0;

  constexpr Stage() = default;
  constexpr explicit Stage(Nat v) : value(v) {}

  constexpr Stage next() const { return Stage{value + 1}; }
  friend constexpr auto operator<=>(Stage, Stage) = default;
};

enum class ErrorKind {
  HorizonExceeded,
  DomainMismatch,
  BoundExhausted,
  InvalidArgument,
  Parse,
  Schema,
  Hypothesis,
  // A statement the constructions rely on was falsified at run time.
  HardFault,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sepclass
