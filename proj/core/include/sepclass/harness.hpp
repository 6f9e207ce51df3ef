#pragma once

// Scenario and trace files, run/verify dispatch, and reports.
//
// Files are line-delimited JSON: one record per line, fields in a fixed order,
// integers in decimal. A scenario file is a "scenario" header followed by its
// sets, programs and certificates. A trace file is a "trace" header, the
// scenario's lines verbatim, a "run" marker, the construction's event records
// and finally "final" snapshot records (written for reading, ignored on load).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sepclass/anticomplete.hpp"
#include "sepclass/nosupermax.hpp"
#include "sepclass/report.hpp"
#include "sepclass/twodegrees.hpp"
#include "sepclass/upclosure.hpp"

namespace sepclass::harness {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class Construction { Anticomplete, Upclosure, Nosupermax, Twodegrees };
const char* to_string(Construction c);
/// Throws Parse on an unknown name.
Construction parse_construction(std::string_view name);

using AnyScenario = std::variant<anticomplete::Scenario, upclosure::Scenario, nosupermax::Scenario,
                                 twodegrees::Scenario>;
using AnyTrace = std::variant<anticomplete::Trace, upclosure::Trace, nosupermax::Trace,
                              twodegrees::Trace>;

Construction construction_of(const AnyScenario& sc);
Nat horizon_of(const AnyScenario& sc);

/// Canonical scenario text; byte-stable for equal scenarios.
std::string write_scenario(const AnyScenario& sc);

/// Parses scenario text. `horizon` replaces the file's horizon before stage
/// stamps are checked. Errors are Parse or Schema, prefixed "line N: ".
AnyScenario read_scenario(std::string_view text, std::optional<Nat> horizon = std::nullopt);

/// Throws Hypothesis with the first problem: upclosure's audited hypotheses,
/// or A n B != 0 for nosupermax.
void audit(const AnyScenario& sc);

/// read_scenario on a file plus audit(); error messages start with the path.
AnyScenario load_scenario(const std::filesystem::path& path,
                          std::optional<Nat> horizon = std::nullopt);

std::uint64_t fnv1a(std::string_view bytes);
/// "fnv1a64:" and 16 hex digits of the canonical scenario text.
std::string scenario_hash(const AnyScenario& sc);

/// Dispatches to the construction. Hard faults propagate.
AnyTrace run(const AnyScenario& sc);

std::string write_trace(const AnyScenario& sc, const AnyTrace& tr);

struct TraceFile {
  AnyScenario scenario;
  AnyTrace trace;
  std::string scenario_hash;
  std::string pairing;
  std::string tool_version;
};

/// Throws Parse/Schema on malformed text, and Schema when the header's hash or
/// pairing id does not match.
TraceFile read_trace(std::string_view text);

VerificationReport verify(const AnyScenario& sc, const AnyTrace& tr);

std::string write_report(const VerificationReport& report);
/// One line per verdict: PASS/FAIL/INFO, name, first counterexample.
std::string summarize(const VerificationReport& report);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace sepclass::harness
