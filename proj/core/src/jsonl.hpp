#pragma once

// Record-per-line JSON reading with line numbers in every error.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sepclass/types.hpp"

namespace sepclass::jsonl {

using Json = nlohmann::ordered_json;

inline std::string line(const Json& j) { return j.dump() + "\n"; }

class Record {
 public:
  Record(Json j, std::size_t line_no) : j_(std::move(j)), line_(line_no) {}

  std::size_t line_no() const noexcept { return line_; }
  const Json& json() const noexcept { return j_; }
  std::string kind() const { return str("record"); }
  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Schema, "line " + std::to_string(line_) + ": " + msg);
  }

  const Json& at(const char* key) const {
    if (!j_.contains(key)) fail(std::string("missing field '") + key + "'");
    return j_.at(key);
  }
  Nat nat(const char* key) const { return as_nat(at(key), key); }
  Pos pos(const char* key) const {
    const auto& v = at(key);
    if (!v.is_number_integer()) fail(std::string("field '") + key + "' is not an integer");
    return v.get<Pos>();
  }
  bool flag(const char* key) const {
    const auto& v = at(key);
    if (!v.is_boolean()) fail(std::string("field '") + key + "' is not a boolean");
    return v.get<bool>();
  }
  std::string str(const char* key) const {
    const auto& v = at(key);
    if (!v.is_string()) fail(std::string("field '") + key + "' is not a string");
    return v.get<std::string>();
  }
  std::optional<Nat> opt_nat(const char* key) const {
    if (!has(key)) return std::nullopt;
    return nat(key);
  }
  std::vector<Nat> nats(const char* key) const {
    const auto& v = at(key);
    if (!v.is_array()) fail(std::string("field '") + key + "' is not an array");
    std::vector<Nat> out;
    for (const auto& x : v) out.push_back(as_nat(x, key));
    return out;
  }
  std::vector<Pos> poss(const char* key) const {
    const auto& v = at(key);
    if (!v.is_array()) fail(std::string("field '") + key + "' is not an array");
    std::vector<Pos> out;
    for (const auto& x : v) {
      if (!x.is_number_integer()) fail(std::string("field '") + key + "' holds a non-integer");
      out.push_back(x.get<Pos>());
    }
    return out;
  }
  std::vector<bool> bits(const char* key) const {
    std::vector<bool> out;
    for (char c : str(key)) {
      if (c != '0' && c != '1') fail(std::string("field '") + key + "' is not a 0/1 string");
      out.push_back(c == '1');
    }
    return out;
  }

 private:
  Nat as_nat(const Json& v, const char* key) const {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<Pos>() >= 0)) {
      fail(std::string("field '") + key + "' is not a natural number");
    }
    return v.get<Nat>();
  }

  Json j_;
  std::size_t line_;
};

/// Blank lines are skipped; a line that is not a JSON object is a Parse error.
inline std::vector<Record> parse_lines(std::string_view text) {
  std::vector<Record> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (raw.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    Json j;
    try {
      j = Json::parse(raw);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("record") || !j.at("record").is_string()) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": not a record object");
    }
    out.emplace_back(std::move(j), line_no);
  }
  return out;
}

inline std::string bit_string(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace sepclass::jsonl
