#include <algorithm>
#include <map>

#include "jsonl.hpp"
#include "sepclass/harness.hpp"
#include "sepclass/pairing.hpp"

namespace sepclass::harness {

namespace detail {
AnyScenario scenario_from_records(const std::vector<jsonl::Record>& recs, std::optional<Nat> horizon_override);
}

using jsonl::Json;
using jsonl::Record;

AnyTrace run(const AnyScenario& any) {
  return std::visit([](const auto& sc) -> AnyTrace {
    using T = std::decay_t<decltype(sc)>;
    if constexpr (std::is_same_v<T, anticomplete::Scenario>) return anticomplete::run(sc);
    else if constexpr (std::is_same_v<T, upclosure::Scenario>) return upclosure::run(sc);
    else if constexpr (std::is_same_v<T, nosupermax::Scenario>) return nosupermax::run(sc);
    else return twodegrees::run(sc);
  }, any);
}

VerificationReport verify(const AnyScenario& any, const AnyTrace& tr) {
  if (any.index() != tr.index()) throw Error(ErrorKind::Schema, "trace and scenario are of different constructions");
  return std::visit([&](const auto& sc) -> VerificationReport {
    using T = std::decay_t<decltype(sc)>;
    if constexpr (std::is_same_v<T, anticomplete::Scenario>) return anticomplete::verify(sc, std::get<anticomplete::Trace>(tr));
    else if constexpr (std::is_same_v<T, upclosure::Scenario>) return upclosure::verify(sc, std::get<upclosure::Trace>(tr));
    else if constexpr (std::is_same_v<T, nosupermax::Scenario>) return nosupermax::verify(sc, std::get<nosupermax::Trace>(tr));
    else return twodegrees::verify(sc, std::get<twodegrees::Trace>(tr));
  }, any);
}

namespace {

Json rec(const char* kind) {
  Json j;
  j["record"] = kind;
  return j;
}

Json opt(const std::optional<Nat>& v) { return v ? Json(*v) : Json(nullptr); }

void write_final(std::string& out, const char* name, const std::vector<Nat>& elements) {
  auto j = rec("final");
  j["set"] = name;
  j["elements"] = elements;
  out += jsonl::line(j);
}

std::vector<Nat> members(const StageSet& s) {
  std::vector<Nat> out;
  for (const auto& e : s.events()) out.push_back(e.element);
  std::sort(out.begin(), out.end());
  return out;
}

void write_body(std::string& out, const anticomplete::Trace& tr) {
  for (const auto& ev : tr.events) {
    auto j = rec("event");
    j["kind"] = anticomplete::to_string(ev.kind);
    j["stage"] = ev.stage;
    j["position"] = ev.position;
    j["restraint"] = ev.restraint;
    j["n"] = ev.n;
    j["sigma"] = ev.sigma;
    j["m"] = ev.m;
    j["into_a"] = ev.into_a;
    j["into_b"] = ev.into_b;
    out += jsonl::line(j);
  }
  const auto sets = anticomplete::rebuild_sets(tr);
  write_final(out, "A", members(sets.a));
  write_final(out, "B", members(sets.b));
  write_final(out, "D", members(sets.d));
}

void write_body(std::string& out, const upclosure::Trace& tr) {
  auto c = rec("case");
  c["domain"] = tr.domain;
  c["declared"] = tr.declared.name();
  c["consistent"] = tr.case_consistent;
  out += jsonl::line(c);
  auto m = rec("m");
  m["values"] = tr.m.values;
  m["not_yet"] = opt(tr.m_not_yet);
  out += jsonl::line(m);
  auto z = rec("z");
  z["bits"] = tr.z.to_string();
  out += jsonl::line(z);
  for (const auto& b : tr.blocks) {
    auto j = rec("block");
    j["n"] = b.n;
    j["lo"] = b.lo;
    j["hi"] = b.hi;
    j["in_c"] = b.in_c;
    j["decoded"] = b.decoded ? Json::array({b.decoded->bit ? 1 : 0, b.decoded->stage}) : Json(nullptr);
    j["recovered"] = b.recovered ? Json::array({b.recovered->value, b.recovered->stage}) : Json(nullptr);
    j["error"] = b.error;
    j["double_agreement"] = b.double_agreement;
    out += jsonl::line(j);
  }
  std::vector<Nat> zs;
  for (Nat i = 0; i < tr.z.length(); ++i) {
    if (tr.z[i]) zs.push_back(i);
  }
  write_final(out, "Z", zs);
}

void write_body(std::string& out, const nosupermax::Trace& tr) {
  for (const auto& at : tr.attempts) {
    auto j = rec("attempt");
    j["index"] = at.index;
    j["base"] = at.base;
    j["timeline"] = at.timeline.map;
    j["initial_x"] = at.initial_x;
    out += jsonl::line(j);
    for (const auto& r : at.records) {
      auto s = rec("stage");
      s["attempt"] = at.index;
      s["stage"] = r.stage;
      s["boundary"] = r.boundary.x;
      s["entered"] = r.entered;
      s["left"] = r.left;
      s["w_new"] = r.w_new;
      s["zmin"] = opt(r.zmin);
      out += jsonl::line(s);
    }
  }
  for (std::size_t i = 0; i < tr.outcomes.size(); ++i) {
    const auto& o = tr.outcomes[i];
    auto j = rec("outcome");
    j["attempt"] = i + 1;
    j["ell"] = o.ell;
    j["k"] = o.k;
    j["parity"] = o.parity;
    j["settling_stage"] = o.settling_stage;
    j["window"] = o.window;
    j["last_change"] = o.last_change;
    Json pw = Json::array();
    for (const auto& w : o.parity_witness) pw.push_back(opt(w));
    j["parity_witness"] = pw;
    out += jsonl::line(j);
  }
  for (const auto& c : tr.checks) {
    auto j = rec("check");
    j["attempt"] = c.cert.attempt;
    j["ell"] = c.cert.ell;
    j["k"] = c.cert.k;
    j["parity"] = c.cert.parity;
    j["settling_stage"] = c.cert.settling_stage;
    j["accepted"] = c.accepted;
    j["reason"] = c.reason;
    j["witness_stage"] = opt(c.witness_stage);
    j["selected"] = c.selected;
    j["next"] = c.next.map;
    out += jsonl::line(j);
  }
  for (const auto& at : tr.attempts) {
    Nat cap = 0;
    for (Nat x : at.initial_x) cap = std::max(cap, x + 1);
    for (const auto& r : at.records) {
      for (Nat x : r.entered) cap = std::max(cap, x + 1);
    }
    nosupermax::XReplay replay(at, cap);
    const auto& x = replay.at(at.records.size());
    std::vector<Nat> xs;
    for (Nat y = 0; y < x.size(); ++y) {
      if (x[y]) xs.push_back(y);
    }
    write_final(out, ("X" + std::to_string(at.index)).c_str(), xs);
  }
}

void write_enter(std::string& out, const char* name, const StageSet& s) {
  for (const auto& e : s.events()) {
    auto j = rec("enter");
    j["set"] = name;
    j["element"] = e.element;
    j["stage"] = e.stage;
    out += jsonl::line(j);
  }
}

void write_body(std::string& out, const twodegrees::Trace& tr) {
  for (std::size_t i = 0; i < tr.axioms.size(); ++i) {
    const auto& ax = tr.axioms[i];
    auto j = rec("axiom");
    j["id"] = i;
    j["e"] = ax.e;
    j["m"] = ax.m;
    j["gamma"] = ax.gamma;
    j["prefix"] = jsonl::bit_string(ax.prefix);
    j["x"] = ax.x;
    j["created_at"] = ax.created_at;
    j["status"] = twodegrees::to_string(ax.status);
    j["ended_at"] = opt(ax.ended_at);
    out += jsonl::line(j);
  }
  write_enter(out, "A", tr.a);
  write_enter(out, "B", tr.b);
  for (const auto& f : tr.firings) {
    auto j = rec("firing");
    j["n"] = f.n;
    j["i"] = f.i;
    j["stage"] = f.stage;
    out += jsonl::line(j);
  }
  for (Nat s = 0; s < tr.blocks.size(); ++s) {
    if (tr.blocks[s].empty()) continue;
    auto j = rec("blocks");
    j["stage"] = s;
    Json bl = Json::array();
    for (const auto& b : tr.blocks[s]) bl.push_back(Json::array({b.x, b.axiom}));
    j["blocked"] = bl;
    out += jsonl::line(j);
  }
  write_final(out, "A", members(tr.a));
  write_final(out, "B", members(tr.b));
}

std::optional<Nat> opt_of(const Record& r, const Json& v) {
  if (v.is_null()) return std::nullopt;
  if (!v.is_number_unsigned()) r.fail("expected a natural number or null");
  return v.get<Nat>();
}

anticomplete::Trace read_anticomplete(const std::vector<Record>& body, Nat horizon) {
  anticomplete::Trace tr;
  tr.horizon = horizon;
  for (const auto& r : body) {
    if (r.kind() != "event") r.fail("unexpected record '" + r.kind() + "'");
    anticomplete::Event ev;
    const auto kind = r.str("kind");
    bool known = false;
    for (auto k : {anticomplete::Event::Kind::Claim, anticomplete::Event::Kind::NAct, anticomplete::Event::Kind::RAct,
                   anticomplete::Event::Kind::Init}) {
      if (kind == anticomplete::to_string(k)) {
        ev.kind = k;
        known = true;
      }
    }
    if (!known) r.fail("unknown event kind '" + kind + "'");
    ev.stage = r.nat("stage");
    ev.position = r.nat("position");
    ev.restraint = r.nat("restraint");
    ev.n = r.nat("n");
    ev.sigma = r.str("sigma");
    ev.m = r.pos("m");
    ev.into_a = r.nats("into_a");
    ev.into_b = r.nats("into_b");
    tr.events.push_back(std::move(ev));
  }
  return tr;
}

upclosure::CaseTag case_of(const Record& r, const std::string& text) {
  if (text == "case2") return upclosure::CaseTag::case2();
  if (text.rfind("case1(", 0) == 0 && text.size() > 7) {
    try {
      return upclosure::CaseTag::case1(std::stoull(text.substr(6, text.size() - 7)));
    } catch (const std::exception&) {
    }
  }
  r.fail("bad case tag '" + text + "'");
}

upclosure::Trace read_upclosure(const std::vector<Record>& body, Nat horizon) {
  upclosure::Trace tr;
  tr.horizon = horizon;
  for (const auto& r : body) {
    const auto k = r.kind();
    if (k == "case") {
      tr.domain = r.nat("domain");
      tr.declared = case_of(r, r.str("declared"));
      tr.case_consistent = r.flag("consistent");
    } else if (k == "m") {
      tr.m.values = r.poss("values");
      tr.m_not_yet = opt_of(r, r.at("not_yet"));
    } else if (k == "z") {
      tr.z = SeparatorSnapshot(r.bits("bits"));
    } else if (k == "block") {
      upclosure::BlockRecord b;
      b.n = r.nat("n");
      b.lo = r.pos("lo");
      b.hi = r.pos("hi");
      b.in_c = r.flag("in_c");
      const auto& d = r.at("decoded");
      if (!d.is_null()) {
        if (!d.is_array() || d.size() != 2) r.fail("decoded is not [bit, stage]");
        b.decoded = upclosure::Decoded{d[0].get<int>() != 0, d[1].get<Nat>()};
      }
      const auto& rc = r.at("recovered");
      if (!rc.is_null()) {
        if (!rc.is_array() || rc.size() != 2) r.fail("recovered is not [value, stage]");
        b.recovered = upclosure::Recovered{rc[0].get<Pos>(), rc[1].get<Nat>()};
      }
      b.error = r.str("error");
      b.double_agreement = r.nats("double_agreement");
      tr.blocks.push_back(std::move(b));
    } else {
      r.fail("unexpected record '" + k + "'");
    }
  }
  return tr;
}

nosupermax::Trace read_nosupermax(const std::vector<Record>& body) {
  nosupermax::Trace tr;
  for (const auto& r : body) {
    const auto k = r.kind();
    if (k == "attempt") {
      nosupermax::AttemptTrace at;
      at.index = static_cast<int>(r.pos("index"));
      at.base = r.pos("base");
      at.timeline.map = r.nats("timeline");
      at.initial_x = r.nats("initial_x");
      tr.attempts.push_back(std::move(at));
    } else if (k == "stage") {
      if (tr.attempts.empty() || tr.attempts.back().index != r.pos("attempt")) r.fail("stage record outside its attempt");
      nosupermax::StageRecord s;
      s.stage = r.nat("stage");
      s.boundary.x = r.poss("boundary");
      s.entered = r.nats("entered");
      s.left = r.nats("left");
      s.w_new = r.nats("w_new");
      s.zmin = opt_of(r, r.at("zmin"));
      tr.attempts.back().records.push_back(std::move(s));
    } else if (k == "outcome") {
      nosupermax::Outcome o;
      o.ell = r.pos("ell");
      o.k = r.pos("k");
      o.parity = static_cast<int>(r.pos("parity"));
      o.settling_stage = r.nat("settling_stage");
      o.window = r.nat("window");
      o.last_change = r.nats("last_change");
      for (const auto& w : r.at("parity_witness")) o.parity_witness.push_back(opt_of(r, w));
      tr.outcomes.push_back(std::move(o));
    } else if (k == "check") {
      nosupermax::CertificateCheck c;
      c.cert = {static_cast<int>(r.pos("attempt")), r.pos("ell"), r.pos("k"), static_cast<int>(r.pos("parity")),
                r.nat("settling_stage")};
      c.accepted = r.flag("accepted");
      c.reason = r.str("reason");
      c.witness_stage = opt_of(r, r.at("witness_stage"));
      c.selected = r.nats("selected");
      c.next.map = r.nats("next");
      tr.checks.push_back(std::move(c));
    } else {
      r.fail("unexpected record '" + k + "'");
    }
  }
  return tr;
}

twodegrees::Trace read_twodegrees(const std::vector<Record>& body, Nat horizon) {
  twodegrees::Trace tr;
  tr.horizon = horizon;
  tr.a = StageSet(horizon);
  tr.b = StageSet(horizon);
  tr.blocks.resize(horizon + 1);
  for (const auto& r : body) {
    const auto k = r.kind();
    if (k == "axiom") {
      if (r.nat("id") != tr.axioms.size()) r.fail("axiom ids out of order");
      twodegrees::Axiom ax;
      ax.e = r.nat("e");
      ax.m = r.nat("m");
      ax.gamma = r.nat("gamma");
      ax.prefix = r.bits("prefix");
      ax.x = r.nat("x");
      ax.created_at = r.nat("created_at");
      const auto st = r.str("status");
      if (st == "live") ax.status = twodegrees::AxiomStatus::Live;
      else if (st == "invalidated") ax.status = twodegrees::AxiomStatus::Invalidated;
      else if (st == "promoted") ax.status = twodegrees::AxiomStatus::Promoted;
      else r.fail("unknown axiom status '" + st + "'");
      ax.ended_at = opt_of(r, r.at("ended_at"));
      tr.axioms.push_back(std::move(ax));
    } else if (k == "enter") {
      const auto name = r.str("set");
      if (name != "A" && name != "B") r.fail("unexpected set '" + name + "'");
      const Nat s = r.nat("stage");
      if (s > horizon) r.fail("stage past horizon");
      if (!(name == "A" ? tr.a : tr.b).enumerate(r.nat("element"), Stage{s})) r.fail("element enters " + name + " twice");
    } else if (k == "firing") {
      tr.firings.push_back({r.nat("n"), r.nat("i"), r.nat("stage")});
    } else if (k == "blocks") {
      const Nat s = r.nat("stage");
      if (s > horizon) r.fail("stage past horizon");
      for (const auto& b : r.at("blocked")) {
        if (!b.is_array() || b.size() != 2) r.fail("blocked entry is not [x, axiom]");
        tr.blocks[s].push_back({b[0].get<Nat>(), b[1].get<std::size_t>()});
      }
    } else {
      r.fail("unexpected record '" + k + "'");
    }
  }
  return tr;
}

}  // namespace

std::string write_trace(const AnyScenario& sc, const AnyTrace& tr) {
  if (sc.index() != tr.index()) throw Error(ErrorKind::Schema, "trace and scenario are of different constructions");
  const auto scenario_text = write_scenario(sc);
  auto h = rec("trace");
  h["construction"] = to_string(construction_of(sc));
  h["scenario_hash"] = scenario_hash(sc);
  h["pairing"] = std::string(PairingScheme::kId);
  h["tool_version"] = std::string(kToolVersion);
  std::string out = jsonl::line(h) + scenario_text;
  auto r = rec("run");
  r["horizon"] = horizon_of(sc);
  out += jsonl::line(r);
  std::visit([&](const auto& t) { write_body(out, t); }, tr);
  return out;
}

TraceFile read_trace(std::string_view text) {
  const auto recs = jsonl::parse_lines(text);
  if (recs.empty() || recs.front().kind() != "trace") throw Error(ErrorKind::Schema, "line 1: missing trace header");
  const auto& h = recs.front();
  std::vector<Record> scenario, body;
  std::optional<Nat> run_horizon;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const auto& r = recs[i];
    if (!run_horizon) {
      if (r.kind() == "run") run_horizon = r.nat("horizon");
      else scenario.push_back(r);
    } else if (r.kind() != "final") {
      body.push_back(r);
    }
  }
  if (!run_horizon) throw Error(ErrorKind::Schema, "missing run record");
  TraceFile tf{detail::scenario_from_records(scenario, std::nullopt), {}, h.str("scenario_hash"), h.str("pairing"),
               h.str("tool_version")};
  if (to_string(construction_of(tf.scenario)) != h.str("construction")) h.fail("header construction differs from the scenario");
  if (tf.pairing != PairingScheme::kId) h.fail("trace was made with pairing scheme '" + tf.pairing + "'");
  if (tf.scenario_hash != scenario_hash(tf.scenario)) h.fail("scenario hash does not match the embedded scenario");
  if (*run_horizon != horizon_of(tf.scenario)) h.fail("run horizon differs from the scenario's");
  switch (construction_of(tf.scenario)) {
    case Construction::Anticomplete: tf.trace = read_anticomplete(body, *run_horizon); break;
    case Construction::Upclosure: tf.trace = read_upclosure(body, *run_horizon); break;
    case Construction::Nosupermax: tf.trace = read_nosupermax(body); break;
    case Construction::Twodegrees: tf.trace = read_twodegrees(body, *run_horizon); break;
  }
  return tf;
}

std::string write_report(const VerificationReport& report) {
  auto h = rec("report");
  h["construction"] = report.construction;
  h["passed"] = report.all_passed();
  h["failed"] = report.failed_invariants();
  std::string out = jsonl::line(h);
  for (const auto& v : report.verdicts) {
    auto j = rec("verdict");
    j["invariant"] = v.invariant;
    j["anchor"] = v.anchor;
    j["passed"] = v.passed;
    j["informational"] = v.informational;
    j["caveat"] = v.caveat;
    j["details"] = v.details;
    Json ces = Json::array();
    for (const auto& c : v.counterexamples) {
      Json cj;
      cj["stage"] = c.stage;
      cj["actor"] = c.actor;
      cj["element"] = c.element;
      cj["detail"] = c.detail;
      ces.push_back(cj);
    }
    j["counterexamples"] = ces;
    out += jsonl::line(j);
  }
  return out;
}

std::string summarize(const VerificationReport& report) {
  std::string out;
  for (const auto& v : report.verdicts) {
    out += v.passed ? (v.informational ? "INFO " : "PASS ") : "FAIL ";
    out += report.construction + "/" + v.invariant;
    if (!v.counterexamples.empty()) {
      const auto& c = v.counterexamples.front();
      out += "  stage " + std::to_string(c.stage) + ", " + c.actor;
      if (c.element >= 0) out += ", element " + std::to_string(c.element);
      out += ": " + c.detail;
    }
    out += "\n";
  }
  return out;
}

}  // namespace sepclass::harness
