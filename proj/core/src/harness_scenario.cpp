#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "jsonl.hpp"
#include "sepclass/harness.hpp"

namespace sepclass::harness {

using jsonl::Json;
using jsonl::Record;

const char* to_string(Construction c) {
  switch (c) {
    case Construction::Anticomplete: return "anticomplete";
    case Construction::Upclosure: return "upclosure";
    case Construction::Nosupermax: return "nosupermax";
    case Construction::Twodegrees: return "twodegrees";
  }
  return "?";
}

Construction parse_construction(std::string_view name) {
  for (auto c : {Construction::Anticomplete, Construction::Upclosure, Construction::Nosupermax,
                 Construction::Twodegrees}) {
    if (name == to_string(c)) return c;
  }
  throw Error(ErrorKind::Parse, "unknown construction '" + std::string(name) + "'");
}

Construction construction_of(const AnyScenario& sc) { return static_cast<Construction>(sc.index()); }

Nat horizon_of(const AnyScenario& sc) {
  return std::visit([](const auto& s) { return s.horizon; }, sc);
}

namespace {

Json header(Construction c, Nat horizon) {
  Json j;
  j["record"] = "scenario";
  j["construction"] = to_string(c);
  j["horizon"] = horizon;
  return j;
}

void write_set(std::string& out, const char* name, const StageSet& s, std::optional<Nat> index = {}) {
  for (const auto& e : s.events()) {
    Json j;
    j["record"] = "enter";
    j["set"] = name;
    if (index) j["index"] = *index;
    j["element"] = e.element;
    j["stage"] = e.stage;
    out += jsonl::line(j);
  }
}

void write_program(std::string& out, const char* name, Nat index, const OracleProgram& p) {
  Json decl;
  decl["record"] = "program";
  decl["name"] = name;
  decl["index"] = index;
  out += jsonl::line(decl);
  for (const auto& b : p.blocks()) {
    Json j;
    j["record"] = "rule";
    j["name"] = name;
    j["index"] = index;
    Json guard = Json::array();
    for (const auto& lit : b.guard.literals()) guard.push_back(Json::array({lit.pos, lit.bit ? 1 : 0}));
    j["guard"] = guard;
    j["first_input"] = b.first_input;
    j["outputs"] = jsonl::bit_string(b.outputs);
    j["use"] = b.use;
    j["available_at"] = b.available_at;
    out += jsonl::line(j);
  }
}

void write_bound(std::string& out, const char* name, const UseBound& f) {
  Json j;
  j["record"] = "bound";
  j["name"] = name;
  j["table"] = f.table();
  out += jsonl::line(j);
}

// Collects the records common to every construction.
class Collector {
 public:
  explicit Collector(Nat horizon) : horizon_(horizon) {}

  bool take(const Record& r) {
    const auto kind = r.kind();
    if (kind == "enter") {
      const auto name = r.str("set");
      const Nat index = r.has("index") ? r.nat("index") : 0;
      const Nat x = r.nat("element"), s = r.nat("stage");
      if (s > horizon_) {
        r.fail("enter " + name + " element " + std::to_string(x) + " at stage " + std::to_string(s) +
               " exceeds horizon " + std::to_string(horizon_));
      }
      auto& seen = seen_[{name, index}];
      if (!seen.insert(x).second) r.fail("element " + std::to_string(x) + " enters " + name + " twice");
      sets_[{name, index}].push_back({x, s});
      return true;
    }
    if (kind == "program") {
      const auto key = std::make_pair(r.str("name"), r.nat("index"));
      if (!programs_.emplace(key, OracleProgram()).second) r.fail("program " + key.first + " declared twice");
      program_lines_[key] = r.line_no();
      return true;
    }
    if (kind == "rule") {
      const auto key = std::make_pair(r.str("name"), r.nat("index"));
      const auto it = programs_.find(key);
      if (it == programs_.end()) r.fail("rule for undeclared program " + key.first);
      std::vector<GuardLiteral> lits;
      const auto& g = r.at("guard");
      if (!g.is_array()) r.fail("guard is not an array");
      for (const auto& lit : g) {
        if (!lit.is_array() || lit.size() != 2 || !lit[0].is_number_unsigned() || !lit[1].is_number_integer()) {
          r.fail("guard literal is not [position, bit]");
        }
        lits.push_back({lit[0].get<Nat>(), lit[1].get<int>() != 0});
      }
      try {
        it->second.add_block({Guard(lits), r.nat("first_input"), r.bits("outputs"), r.nat("use"),
                              r.nat("available_at")});
      } catch (const Error& e) {
        r.fail(e.what());
      }
      return true;
    }
    if (kind == "bound") {
      try {
        bounds_[r.str("name")] = UseBound(r.nats("table"));
      } catch (const Error& e) {
        r.fail(e.what());
      }
      return true;
    }
    return false;
  }

  StageSet set(const std::string& name, Nat index = 0) const {
    const auto it = sets_.find({name, index});
    if (it == sets_.end()) return StageSet(horizon_);
    return StageSet::from_events(it->second, horizon_);
  }

  bool has_program(const std::string& name, Nat index) const { return programs_.count({name, index}) != 0; }

  OracleProgram program(const std::string& name, Nat index) const {
    const auto it = programs_.find({name, index});
    if (it == programs_.end()) return OracleProgram();
    try {
      it->second.validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::Schema, "line " + std::to_string(program_lines_.at({name, index})) + ": program " +
                                         name + " " + std::to_string(index) + ": " + e.what());
    }
    return it->second;
  }

  std::vector<Nat> program_indices(const std::string& name) const {
    std::vector<Nat> out;
    for (const auto& [key, p] : programs_) {
      if (key.first == name) out.push_back(key.second);
    }
    return out;
  }

  UseBound bound(const std::string& name) const {
    const auto it = bounds_.find(name);
    if (it == bounds_.end()) throw Error(ErrorKind::Schema, "missing bound '" + name + "'");
    return it->second;
  }

  void check_sets(const std::set<std::string>& allowed) const {
    for (const auto& [key, ev] : sets_) {
      if (!allowed.count(key.first)) throw Error(ErrorKind::Schema, "unexpected set '" + key.first + "'");
    }
  }

 private:
  Nat horizon_;
  std::map<std::pair<std::string, Nat>, std::vector<Entry>> sets_;
  std::map<std::pair<std::string, Nat>, std::set<Nat>> seen_;
  std::map<std::pair<std::string, Nat>, OracleProgram> programs_;
  std::map<std::pair<std::string, Nat>, std::size_t> program_lines_;
  std::map<std::string, UseBound> bounds_;
};

upclosure::CaseTag parse_case(const Record& r, const std::string& text) {
  if (text == "case2") return upclosure::CaseTag::case2();
  if (text.rfind("case1(", 0) == 0 && text.back() == ')') {
    try {
      return upclosure::CaseTag::case1(std::stoull(text.substr(6, text.size() - 7)));
    } catch (const std::exception&) {
    }
  }
  r.fail("bad case tag '" + text + "'");
}

}  // namespace

std::string write_scenario(const AnyScenario& any) {
  std::string out;
  std::visit(
      [&](const auto& sc) {
        using T = std::decay_t<decltype(sc)>;
        if constexpr (std::is_same_v<T, anticomplete::Scenario>) {
          out += jsonl::line(header(Construction::Anticomplete, sc.horizon));
          for (const auto& [e, p] : sc.phi) write_program(out, "phi", e, p);
        } else if constexpr (std::is_same_v<T, upclosure::Scenario>) {
          auto h = header(Construction::Upclosure, sc.horizon);
          h["domain"] = sc.domain;
          h["declared"] = sc.declared.name();
          h["blocks"] = sc.blocks;
          out += jsonl::line(h);
          write_set(out, "A", sc.a);
          write_set(out, "B", sc.b);
          write_set(out, "C", sc.c);
          write_bound(out, "gamma", sc.gamma.bound());
          write_bound(out, "delta", sc.delta.bound());
          write_bound(out, "f", sc.f);
          write_program(out, "gamma", 0, sc.gamma.program());
          write_program(out, "delta", 0, sc.delta.program());
        } else if constexpr (std::is_same_v<T, nosupermax::Scenario>) {
          auto h = header(Construction::Nosupermax, sc.horizon);
          h["auto_certify"] = sc.auto_certify;
          h["window_percent"] = sc.window_percent;
          out += jsonl::line(h);
          write_set(out, "A", sc.a);
          write_set(out, "B", sc.b);
          for (const auto& c : sc.certificates) {
            Json j;
            j["record"] = "certificate";
            j["attempt"] = c.attempt;
            j["ell"] = c.ell;
            j["k"] = c.k;
            j["parity"] = c.parity;
            j["settling_stage"] = c.settling_stage;
            out += jsonl::line(j);
          }
        } else {
          auto h = header(Construction::Twodegrees, sc.horizon);
          h["columns"] = sc.columns;
          h["requirements"] = sc.w.size();
          out += jsonl::line(h);
          write_set(out, "C", sc.c);
          write_set(out, "K", sc.k);
          for (Nat e = 0; e < sc.w.size(); ++e) write_set(out, "W", sc.w[e], e);
          for (Nat e = 0; e < sc.phi.size(); ++e) write_program(out, "phi", e, sc.phi[e]);
        }
      },
      any);
  return out;
}

namespace detail {

AnyScenario scenario_from_records(const std::vector<Record>& recs, std::optional<Nat> horizon_override) {
  if (recs.empty()) throw Error(ErrorKind::Schema, "empty scenario");
  const auto& h = recs.front();
  if (h.kind() != "scenario") h.fail("first record must be the scenario header");
  Construction c;
  try {
    c = parse_construction(h.str("construction"));
  } catch (const Error& e) {
    h.fail(e.what());
  }
  const Nat horizon = horizon_override.value_or(h.nat("horizon"));
  Collector col(horizon);
  std::vector<nosupermax::SpeedupCertificate> certs;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const auto& r = recs[i];
    if (col.take(r)) continue;
    if (r.kind() == "certificate" && c == Construction::Nosupermax) {
      certs.push_back({static_cast<int>(r.pos("attempt")), r.pos("ell"), r.pos("k"),
                       static_cast<int>(r.pos("parity")), r.nat("settling_stage")});
      continue;
    }
    r.fail("unexpected record '" + r.kind() + "' in a " + to_string(c) + " scenario");
  }
  switch (c) {
    case Construction::Anticomplete: {
      col.check_sets({});
      anticomplete::Scenario sc;
      sc.horizon = horizon;
      for (Nat e : col.program_indices("phi")) sc.phi[e] = col.program("phi", e);
      return sc;
    }
    case Construction::Upclosure: {
      col.check_sets({"A", "B", "C"});
      upclosure::Scenario sc;
      sc.horizon = horizon;
      sc.domain = h.nat("domain");
      sc.declared = parse_case(h, h.str("declared"));
      sc.blocks = h.nat("blocks");
      sc.a = col.set("A");
      sc.b = col.set("B");
      sc.c = col.set("C");
      sc.f = col.bound("f");
      sc.gamma = UseBoundedOperator(col.program("gamma", 0), col.bound("gamma"));
      sc.delta = UseBoundedOperator(col.program("delta", 0), col.bound("delta"));
      return sc;
    }
    case Construction::Nosupermax: {
      col.check_sets({"A", "B"});
      nosupermax::Scenario sc;
      sc.horizon = horizon;
      sc.auto_certify = h.flag("auto_certify");
      sc.window_percent = h.nat("window_percent");
      if (sc.window_percent > 100) h.fail("window_percent above 100");
      sc.a = col.set("A");
      sc.b = col.set("B");
      sc.certificates = std::move(certs);
      return sc;
    }
    case Construction::Twodegrees: {
      col.check_sets({"C", "K", "W"});
      twodegrees::Scenario sc;
      sc.horizon = horizon;
      sc.columns = h.nat("columns");
      if (sc.columns > 1000) h.fail("columns above 1000");
      const Nat req = h.nat("requirements");
      sc.c = col.set("C");
      sc.k = col.set("K");
      for (Nat e : col.program_indices("phi")) {
        if (e >= req) throw Error(ErrorKind::Schema, "program phi " + std::to_string(e) + " beyond the requirement count");
      }
      for (Nat e = 0; e < req; ++e) {
        sc.w.push_back(col.set("W", e));
        sc.phi.push_back(col.program("phi", e));
      }
      return sc;
    }
  }
  throw Error(ErrorKind::Schema, "unreachable");
}

}  // namespace detail

AnyScenario read_scenario(std::string_view text, std::optional<Nat> horizon) {
  return detail::scenario_from_records(jsonl::parse_lines(text), horizon);
}

void audit(const AnyScenario& any) {
  if (const auto* up = std::get_if<upclosure::Scenario>(&any)) {
    const auto problems = upclosure::audit_hypotheses(*up);
    if (!problems.empty()) {
      throw Error(ErrorKind::Hypothesis, "hypothesis violation: " + problems.front() +
                                             (problems.size() > 1 ? " (and " + std::to_string(problems.size() - 1) + " more)" : ""));
    }
  }
  if (const auto* ns = std::get_if<nosupermax::Scenario>(&any)) {
    for (const auto& e : ns->a.events()) {
      if (ns->b.contains(e.element)) {
        throw Error(ErrorKind::Hypothesis, "hypothesis violation: element " + std::to_string(e.element) + " is in both A and B");
      }
    }
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, path.string() + ": cannot write");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Parse, path.string() + ": write failed");
}

AnyScenario load_scenario(const std::filesystem::path& path, std::optional<Nat> horizon) {
  const auto text = read_file(path);
  try {
    auto sc = read_scenario(text, horizon);
    audit(sc);
    return sc;
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string scenario_hash(const AnyScenario& sc) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(write_scenario(sc))));
  return std::string("fnv1a64:") + buf;
}

}  // namespace sepclass::harness
