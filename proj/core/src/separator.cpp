#include "sepclass/separator.hpp"

namespace sepclass {

SeparatorSnapshot SeparatorSnapshot::from_string(std::string_view text) {
  std::vector<bool> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::Parse, "separator string must contain only 0 and 1");
    }
    bits.push_back(c == '1');
  }
  return SeparatorSnapshot(std::move(bits));
}

SeparatorSnapshot SeparatorSnapshot::of_set(const std::set<Nat>& members, Nat length) {
  SeparatorSnapshot out(length);
  for (Nat m : members) {
    if (m < length) out.set(m, true);
  }
  return out;
}

std::string SeparatorSnapshot::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

bool is_separator(const SeparatorSnapshot& x, const std::set<Nat>& a,
                  const std::set<Nat>& b) {
  auto check_domain = [&](const std::set<Nat>& s, const char* name) {
    if (!s.empty() && *s.rbegin() >= x.length()) {
      throw Error(ErrorKind::DomainMismatch,
                  std::string(name) + " has element " + std::to_string(*s.rbegin()) +
                      " outside separator domain of length " +
                      std::to_string(x.length()));
    }
  };
  check_domain(a, "A");
  check_domain(b, "B");
  for (Nat e : a) {
    if (!x[e]) return false;
  }
  for (Nat e : b) {
    if (x[e]) return false;
  }
  return true;
}

}  // namespace sepclass
