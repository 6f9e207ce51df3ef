#include <benchmark/benchmark.h>

#include "sepclass/corpus.hpp"
#include "sepclass/harness.hpp"
#include "sepclass/pairing.hpp"

using namespace sepclass;

namespace {

void BM_PairingFresh(benchmark::State& state) {
  const Nat n = static_cast<Nat>(state.range(0));
  for (auto _ : state) {
    PairingScheme p;
    benchmark::DoNotOptimize(p.column_ceiling(n));
  }
}
BENCHMARK(BM_PairingFresh)->Arg(10)->Arg(20);

void BM_ColumnCode(benchmark::State& state) {
  Nat code = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(default_pairing().column_code(code));
    code = (code + 97) % 1000;
  }
}
BENCHMARK(BM_ColumnCode);

template <class Make>
void run_and_verify(benchmark::State& state, Make make, bool verify) {
  const harness::AnyScenario sc = make(static_cast<Nat>(state.range(0)));
  for (auto _ : state) {
    auto tr = harness::run(sc);
    if (verify) benchmark::DoNotOptimize(harness::verify(sc, tr).all_passed());
    benchmark::DoNotOptimize(tr);
  }
}

auto anticomplete = [](Nat h) { return corpus::anticomplete_scenario(corpus::AnticompleteAdversary::Mixed, 1, h); };
auto nosupermax = [](Nat h) { return corpus::nosupermax_scenario(corpus::NosupermaxAdversary::TwoPhase, 1, h); };
auto twodegrees = [](Nat h) { return corpus::twodegrees_scenario(corpus::TwodegreesAdversary::ColumnHunter, 1, h); };

void BM_AnticompleteRun(benchmark::State& s) { run_and_verify(s, anticomplete, false); }
void BM_AnticompleteVerify(benchmark::State& s) { run_and_verify(s, anticomplete, true); }
void BM_NosupermaxRun(benchmark::State& s) { run_and_verify(s, nosupermax, false); }
void BM_NosupermaxVerify(benchmark::State& s) { run_and_verify(s, nosupermax, true); }
void BM_TwodegreesRun(benchmark::State& s) { run_and_verify(s, twodegrees, false); }
void BM_TwodegreesVerify(benchmark::State& s) { run_and_verify(s, twodegrees, true); }

BENCHMARK(BM_AnticompleteRun)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnticompleteVerify)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NosupermaxRun)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NosupermaxVerify)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwodegreesRun)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwodegreesVerify)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_UpclosureRunVerify(benchmark::State& state) {
  const harness::AnyScenario sc = corpus::upclosure_scenario(upclosure::CaseTag::Kind::Case2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(harness::verify(sc, harness::run(sc)).all_passed());
}
BENCHMARK(BM_UpclosureRunVerify)->Unit(benchmark::kMicrosecond);

void BM_TraceWriteRead(benchmark::State& state) {
  const harness::AnyScenario sc = twodegrees(1000);
  const auto tr = harness::run(sc);
  for (auto _ : state) benchmark::DoNotOptimize(harness::read_trace(harness::write_trace(sc, tr)));
}
BENCHMARK(BM_TraceWriteRead)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
