#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "sepclass/corpus.hpp"
#include "sepclass/harness.hpp"

using namespace sepclass;
namespace fs = std::filesystem;

namespace {

enum Exit { kPass = 0, kViolation = 1, kUsage = 2, kHypothesis = 3 };

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Hypothesis: return kHypothesis;
    // A falsified construction assertion is a failed check, not bad input.
    case ErrorKind::HardFault: return kViolation;
    default: return kUsage;
  }
}

void print_report(const VerificationReport& rep, bool fail_fast) {
  if (!fail_fast) {
    std::cout << harness::summarize(rep);
    return;
  }
  VerificationReport first = rep;
  first.verdicts.clear();
  for (const auto& v : rep.verdicts) {
    first.verdicts.push_back(v);
    if (!v.passed) break;
  }
  std::cout << harness::summarize(first);
}

int cmd_run(const std::string& scenario, std::optional<Nat> horizon, const std::string& trace_out,
            const std::string& report_out, bool fail_fast) {
  const auto sc = harness::load_scenario(scenario, horizon);
  const auto tr = harness::run(sc);
  const auto text = harness::write_trace(sc, tr);
  if (!trace_out.empty()) harness::write_file(trace_out, text);
  const auto rep = harness::verify(sc, tr);
  if (!report_out.empty()) harness::write_file(report_out, harness::write_report(rep));
  print_report(rep, fail_fast);
  return rep.all_passed() ? kPass : kViolation;
}

int cmd_verify(const std::vector<std::string>& traces, const std::string& report_out, bool fail_fast) {
  std::string reports;
  int status = kPass;
  for (const auto& path : traces) {
    harness::TraceFile tf;
    try {
      tf = harness::read_trace(harness::read_file(path));
    } catch (const Error& e) {
      throw Error(e.kind(), path + ": " + e.what());
    }
    const auto rep = harness::verify(tf.scenario, tf.trace);
    reports += harness::write_report(rep);
    if (traces.size() > 1) std::cout << "== " << path << "\n";
    print_report(rep, fail_fast);
    if (!rep.all_passed()) {
      status = kViolation;
      if (fail_fast) break;
    }
  }
  if (!report_out.empty()) harness::write_file(report_out, reports);
  return status;
}

int cmd_replay(const std::string& trace) {
  const auto original = harness::read_file(trace);
  const auto tf = harness::read_trace(original);
  const auto again = harness::write_trace(tf.scenario, harness::run(tf.scenario));
  if (again == original) {
    std::cout << "replay identical (" << original.size() << " bytes, " << tf.scenario_hash << ")\n";
    return kPass;
  }
  std::size_t line = 1, i = 0;
  while (i < original.size() && i < again.size() && original[i] == again[i]) {
    if (original[i] == '\n') ++line;
    ++i;
  }
  std::cout << "replay differs at line " << line << "\n";
  return kViolation;
}

int cmd_gen(const std::string& construction, std::size_t count, Nat horizon, std::uint64_t seed, const fs::path& dir) {
  const auto c = harness::parse_construction(construction);
  fs::create_directories(dir);
  std::vector<harness::AnyScenario> out;
  switch (c) {
    case harness::Construction::Anticomplete:
      for (auto& s : corpus::anticomplete_corpus(count, horizon, seed)) out.emplace_back(std::move(s));
      break;
    case harness::Construction::Upclosure:
      for (auto& s : corpus::upclosure_corpus((count + 1) / 2, seed)) out.emplace_back(std::move(s));
      out.resize(count);
      break;
    case harness::Construction::Nosupermax:
      for (auto& s : corpus::nosupermax_corpus(count, horizon, seed)) out.emplace_back(std::move(s));
      break;
    case harness::Construction::Twodegrees:
      for (auto& s : corpus::twodegrees_corpus(count, horizon, seed)) out.emplace_back(std::move(s));
      break;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "%s-%03zu.jsonl", construction.c_str(), i);
    harness::write_file(dir / name, harness::write_scenario(out[i]));
  }
  std::cout << "wrote " << out.size() << " scenarios to " << dir.string() << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stage-by-stage simulator and verifier for separating-class constructions"};
  app.require_subcommand(1);

  std::string scenario, trace_out, report_out, construction, out_dir;
  std::vector<std::string> traces;
  std::optional<Nat> horizon;
  bool fail_fast = false;
  std::size_t count = 20;
  Nat gen_horizon = 1000;
  std::uint64_t seed = 1;

  auto* run = app.add_subcommand("run", "run a scenario, write its trace, verify it");
  run->add_option("--scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--horizon", horizon, "override the scenario's horizon");
  run->add_option("--trace-out", trace_out, "trace output path");
  run->add_option("--report-out", report_out, "report output path");
  run->add_flag("--fail-fast", fail_fast, "stop at the first failing verdict");

  auto* verify = app.add_subcommand("verify", "verify one or more trace files");
  verify->add_option("--trace", traces, "trace file (repeatable)")->required()->check(CLI::ExistingFile);
  verify->add_option("--report-out", report_out, "report output path");
  verify->add_flag("--fail-fast", fail_fast, "stop at the first failing trace");

  std::string replay_trace;
  auto* replay = app.add_subcommand("replay", "re-run a trace's scenario and compare bytes");
  replay->add_option("--trace", replay_trace, "trace file")->required()->check(CLI::ExistingFile);

  auto* gen = app.add_subcommand("gen-corpus", "write generated scenarios");
  gen->add_option("--construction", construction, "anticomplete | upclosure | nosupermax | twodegrees")->required();
  gen->add_option("--count", count, "number of scenarios");
  gen->add_option("--horizon", gen_horizon, "horizon (ignored by upclosure)");
  gen->add_option("--seed", seed, "first seed");
  gen->add_option("--out-dir", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*run) return cmd_run(scenario, horizon, trace_out, report_out, fail_fast);
    if (*verify) return cmd_verify(traces, report_out, fail_fast);
    if (*replay) return cmd_replay(replay_trace);
    return cmd_gen(construction, count, gen_horizon, seed, out_dir);
  } catch (const Error& e) {
    std::cerr << "sepsim: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "sepsim: " << e.what() << "\n";
    return kUsage;
  }
}
