// Runs the acceptance criteria over generated corpora and shipped fixtures and
// prints one PASS/FAIL line per criterion. Exit status is the failure count.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "faults.hpp"
#include "sepclass/corpus.hpp"
#include "sepclass/harness.hpp"
#include "sepclass/pairing.hpp"

using namespace sepclass;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr Nat kHorizon = 1000;
constexpr std::size_t kCorpus = 20;
constexpr std::size_t kPerCase = 100;
constexpr std::uint64_t kSeed = 1;

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " C" << id << " " << title << ": " << detail << "\n";
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Failing counterexamples of one verdict over many reports, first few shown.
struct Tally {
  std::size_t runs = 0, violations = 0;
  std::string first;

  void add(const VerificationReport& rep, const std::string& invariant) {
    ++runs;
    const auto* v = rep.find(invariant);
    if (v == nullptr) {
      ++violations;
      if (first.empty()) first = "missing verdict " + invariant;
      return;
    }
    if (v->passed) return;
    violations += v->counterexamples.size();
    if (first.empty() && !v->counterexamples.empty()) {
      const auto& c = v->counterexamples.front();
      first = invariant + " at stage " + std::to_string(c.stage) + ", " + c.actor + ": " + c.detail;
    }
  }
  std::string line(const std::string& what) const {
    return std::to_string(runs) + " runs, " + std::to_string(violations) + " " + what + " violations" +
           (first.empty() ? "" : " (" + first + ")");
  }
};

template <class S>
std::vector<harness::AnyScenario> wrap(std::vector<S> v) {
  return {std::make_move_iterator(v.begin()), std::make_move_iterator(v.end())};
}

struct Runs {
  std::vector<harness::AnyScenario> scenarios;
  std::vector<VerificationReport> reports;
  std::vector<harness::AnyTrace> traces;
  double seconds = 0;
};

Runs run_all(std::vector<harness::AnyScenario> scenarios) {
  Runs out;
  const auto t0 = Clock::now();
  for (const auto& sc : scenarios) {
    auto tr = harness::run(sc);
    out.reports.push_back(harness::verify(sc, tr));
    out.traces.push_back(std::move(tr));
  }
  out.seconds = seconds_since(t0);
  out.scenarios = std::move(scenarios);
  return out;
}

void anticomplete_criteria(const Runs& r) {
  Tally wtt, restraint, npres;
  for (const auto& rep : r.reports) {
    wtt.add(rep, "wtt-promise");
    restraint.add(rep, "restraint-discipline");
    npres.add(rep, "n-preservation");
  }
  const bool ok1 = r.scenarios.size() >= 20 && wtt.violations == 0 && restraint.violations == 0 && r.seconds < 10.0;
  report(1, "wtt promise and restraint", ok1,
         wtt.line("wtt") + "; " + std::to_string(restraint.violations) + " restraint violations; " +
             fixed(r.seconds) + " s" + (restraint.first.empty() ? "" : " (" + restraint.first + ")"));
  report(2, "N preservation", npres.violations == 0, npres.line("n-preservation"));
}

void upclosure_criteria(const Runs& r) {
  std::size_t case1 = 0, case2 = 0, recovered = 0, audited_bad = 0;
  Tally round, recov, excl;
  for (std::size_t i = 0; i < r.scenarios.size(); ++i) {
    const auto& sc = std::get<upclosure::Scenario>(r.scenarios[i]);
    const auto& tr = std::get<upclosure::Trace>(r.traces[i]);
    const auto& rep = r.reports[i];
    if (!upclosure::audit_hypotheses(sc).empty() || sc.domain > 64 || sc.blocks > 8) ++audited_bad;
    const bool c2 = sc.declared.kind == upclosure::CaseTag::Kind::Case2;
    ++(c2 ? case2 : case1);
    round.add(rep, "round-trip");
    if (c2) {
      recov.add(rep, "m-recovery");
      // Direct m_{n+1} from the recursion, compared with each recovery.
      const auto direct = upclosure::m_sequence(sc.declared, sc.a, sc.b, Stage{sc.horizon}, sc.f, tr.m.values.size());
      for (const auto& rec : tr.blocks) {
        if (rec.recovered && rec.n + 1 < direct.seq.values.size() && rec.recovered->value == direct.seq.values[rec.n + 1]) {
          ++recovered;
        } else {
          ++recov.violations;
          if (recov.first.empty()) recov.first = "block " + std::to_string(rec.n) + " recovery differs from the recursion";
        }
      }
    }
    excl.add(rep, "mutual-exclusion");
  }
  const bool ok3 = case1 >= 100 && case2 >= 100 && audited_bad == 0 && round.violations == 0 &&
                   recov.violations == 0 && r.seconds < 30.0;
  report(3, "upclosure round trip", ok3,
         std::to_string(case1) + " case-1 and " + std::to_string(case2) + " case-2 scenarios, " +
             std::to_string(audited_bad) + " outside the hypotheses, " + std::to_string(round.violations) +
             " decoding and " + std::to_string(recov.violations) + " recovery violations, " +
             std::to_string(recovered) + " recoveries exact; " + fixed(r.seconds) + " s" +
             (round.first.empty() ? "" : " (" + round.first + ")") + (recov.first.empty() ? "" : " (" + recov.first + ")"));
  report(4, "mutual exclusion", excl.violations == 0, excl.line("mutual-exclusion"));
}

void nosupermax_criteria(const Runs& r) {
  Tally disc, trig, shape, cert;
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < r.scenarios.size(); ++i) {
    disc.add(r.reports[i], "change-discipline");
    trig.add(r.reports[i], "w-trigger");
    shape.add(r.reports[i], "boundary-shape");
    cert.add(r.reports[i], "speedup-certificate");
    for (const auto& chk : std::get<nosupermax::Trace>(r.traces[i]).checks) accepted += chk.accepted;
  }
  report(5, "change discipline and W-trigger", r.scenarios.size() >= 20 && disc.violations == 0 && trig.violations == 0,
         disc.line("change-discipline") + "; " + std::to_string(trig.violations) + " w-trigger violations" +
             (trig.first.empty() ? "" : " (" + trig.first + ")"));
  report(6, "boundary shape", shape.violations == 0, shape.line("boundary-shape"));

  // Shipped certificate fixtures: accept-* must pass every check and verify
  // cleanly, reject-* must end with a rejection carrying a stage.
  std::size_t fixtures = 0, as_labeled = 0;
  std::string bad;
  for (const auto& entry : fs::directory_iterator(SEPCLASS_CERT_FIXTURES)) {
    const auto name = entry.path().filename().string();
    if (entry.path().extension() != ".jsonl") continue;
    ++fixtures;
    const auto sc = harness::load_scenario(entry.path().string(), std::nullopt);
    const auto tr = harness::run(sc);
    const auto& ntr = std::get<nosupermax::Trace>(tr);
    bool ok = false;
    if (name.rfind("accept-", 0) == 0) {
      ok = !ntr.checks.empty() && harness::verify(sc, tr).all_passed();
      for (const auto& chk : ntr.checks) ok = ok && chk.accepted;
      accepted += ok ? ntr.checks.size() : 0;
    } else if (name.rfind("reject-", 0) == 0) {
      ok = !ntr.checks.empty() && !ntr.checks.back().accepted && ntr.checks.back().witness_stage.has_value();
    }
    if (ok) {
      ++as_labeled;
    } else if (bad.empty()) {
      bad = " (" + name + " not as labeled)";
    }
  }
  report(7, "speedup soundness", cert.violations == 0 && fixtures > 0 && as_labeled == fixtures,
         std::to_string(accepted) + " accepted certificates with every re-indexed stage checked, " +
             std::to_string(cert.violations) + " violations; " + std::to_string(as_labeled) + "/" +
             std::to_string(fixtures) + " fixtures as labeled" + bad);
}

void twodegrees_criteria(const Runs& r) {
  Tally blocks, cubes, cfromb, bfromc;
  Nat worst_block = 0;
  for (std::size_t i = 0; i < r.scenarios.size(); ++i) {
    blocks.add(r.reports[i], "block-census");
    cubes.add(r.reports[i], "cube-census");
    cfromb.add(r.reports[i], "c-from-b");
    bfromc.add(r.reports[i], "b-from-c");
    // Independent recount of the column bound at every stage.
    const auto& sc = std::get<twodegrees::Scenario>(r.scenarios[i]);
    const auto& tr = std::get<twodegrees::Trace>(r.traces[i]);
    for (Nat s = 0; s <= sc.horizon; ++s) {
      for (Nat n = 0; n <= 10; ++n) {
        const Nat c = twodegrees::block_census(tr, n, s);
        worst_block = std::max(worst_block, c);
        if (c > n * n) {
          ++blocks.violations;
          if (blocks.first.empty()) blocks.first = "column " + std::to_string(n) + " at stage " + std::to_string(s);
        }
      }
    }
  }
  report(8, "census bounds", r.scenarios.size() >= 20 && blocks.violations == 0 && cubes.violations == 0,
         blocks.line("block-census") + "; " + std::to_string(cubes.violations) + " cube-census violations" +
             (cubes.first.empty() ? "" : " (" + cubes.first + ")") + "; largest column count " +
             std::to_string(worst_block));
  report(9, "coding round trips", cfromb.violations == 0 && bfromc.violations == 0,
         cfromb.line("c-from-b") + "; " + std::to_string(bfromc.violations) + " b-from-c violations" +
             (bfromc.first.empty() ? "" : " (" + bfromc.first + ")"));
}

int sh(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

// Two separate sepsim processes per scenario, traces compared byte for byte.
void determinism_criterion(const std::vector<std::pair<std::string, std::vector<harness::AnyScenario>>>& corpora) {
  const fs::path dir = fs::temp_directory_path() / ("sepsim-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string sepsim = quote(SEPSIM_PATH);
  std::size_t total = 0, identical = 0, regenerated = 0;
  std::string bad;
  for (const auto& [name, scenarios] : corpora) {
    const auto cdir = dir / name;
    std::ostringstream gen;
    gen << sepsim << " gen-corpus --construction " << name << " --count " << scenarios.size() << " --horizon "
        << kHorizon << " --seed " << kSeed << " --out-dir " << quote(cdir) << " > /dev/null";
    if (sh(gen.str()) != 0) {
      bad = " (gen-corpus failed for " + name + ")";
      continue;
    }
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      char file[64];
      std::snprintf(file, sizeof file, "%s-%03zu", name.c_str(), i);
      const auto scen = cdir / (std::string(file) + ".jsonl");
      ++total;
      if (fs::exists(scen) && harness::read_file(scen.string()) == harness::write_scenario(scenarios[i])) ++regenerated;
      std::string traces[2];
      for (int k = 0; k < 2; ++k) {
        const auto out = cdir / (std::string(file) + ".trace" + std::to_string(k));
        sh(sepsim + " run --scenario " + quote(scen) + " --trace-out " + quote(out) + " > /dev/null 2>&1");
        traces[k] = fs::exists(out) ? harness::read_file(out.string()) : std::string();
      }
      if (!traces[0].empty() && traces[0] == traces[1]) {
        ++identical;
      } else if (bad.empty()) {
        bad = " (" + std::string(file) + " differs)";
      }
    }
  }
  fs::remove_all(dir);
  report(10, "determinism", total > 0 && identical == total && regenerated == total,
         std::to_string(identical) + "/" + std::to_string(total) + " traces byte-identical across processes, " +
             std::to_string(regenerated) + "/" + std::to_string(total) + " scenario files match the in-process corpus" + bad);
}

void fault_criterion(const std::vector<harness::AnyScenario>& bases) {
  const auto results = acceptance::run_faults(bases);
  std::size_t caught = 0, isolated = 0;
  std::string bad;
  for (const auto& r : results) {
    if (r.applied && r.target_failed) {
      ++caught;
      if (r.failed.size() == 1) ++isolated;
      std::cerr << "  fault '" << r.name << "' -> " << r.target << " failed; all failing:";
      for (const auto& f : r.failed) std::cerr << " " << f;
      std::cerr << "\n";
    } else {
      std::cerr << "  fault '" << r.name << "' " << (r.applied ? "did not fail " : "found no base for ") << r.target
                << "\n";
      if (bad.empty()) bad = " (" + r.name + ")";
    }
  }
  report(11, "fault-injection coverage", caught == results.size(),
         std::to_string(caught) + "/" + std::to_string(results.size()) + " faults fail their target verdict, " +
             std::to_string(isolated) + " fail it alone" + bad);
}

}  // namespace

int main() {
  const auto anti = run_all(wrap(corpus::anticomplete_corpus(kCorpus, kHorizon, kSeed)));
  anticomplete_criteria(anti);
  const auto up = run_all(wrap(corpus::upclosure_corpus(kPerCase, kSeed)));
  upclosure_criteria(up);
  const auto nsm = run_all(wrap(corpus::nosupermax_corpus(kCorpus, kHorizon, kSeed)));
  nosupermax_criteria(nsm);
  const auto two = run_all(wrap(corpus::twodegrees_corpus(kCorpus, kHorizon, kSeed)));
  twodegrees_criteria(two);

  determinism_criterion({{"anticomplete", anti.scenarios},
                         {"upclosure", up.scenarios},
                         {"nosupermax", nsm.scenarios},
                         {"twodegrees", two.scenarios}});

  // Fault bases: smaller runs of every construction.
  std::vector<harness::AnyScenario> bases;
  for (auto& s : wrap(corpus::anticomplete_corpus(4, 300, kSeed))) bases.push_back(std::move(s));
  for (auto& s : wrap(corpus::upclosure_corpus(2, kSeed))) bases.push_back(std::move(s));
  for (auto kind : {corpus::NosupermaxAdversary::AbsorbA, corpus::NosupermaxAdversary::TwoPhase}) {
    bases.emplace_back(corpus::nosupermax_scenario(kind, 4, 600));
  }
  for (auto& s : wrap(corpus::twodegrees_corpus(3, 300, kSeed))) bases.push_back(std::move(s));
  fault_criterion(bases);

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
