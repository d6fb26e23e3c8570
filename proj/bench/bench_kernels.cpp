#include <benchmark/benchmark.h>
#include <omp.h>

#include "tetris/analysis.hpp"
#include "tetris/solver.hpp"

using namespace tetris;

namespace {

// An open 6x6 well and seven mixed pieces; four cleared rows are out of reach,
// so the search visits the whole tree.
const GeneratedGame& search_game() {
  static const GeneratedGame g =
      plain_game(Board(6, 6), {PieceType::T, PieceType::I, PieceType::LG, PieceType::Sq, PieceType::RS, PieceType::I,
                               PieceType::LS});
  return g;
}

void BM_SolveSerial(benchmark::State& state) {
  const Objective o{ObjectiveKind::RowsCleared, 7};
  for (auto _ : state) benchmark::DoNotOptimize(solve_decision(search_game(), RotationModel::Instantaneous, {}, o));
}

void BM_SolveRootFanOut(benchmark::State& state) {
  const Objective o{ObjectiveKind::RowsCleared, 7};
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_decision(search_game(), RotationModel::Instantaneous, {}, o, {}, false, {jobs, {}}));
}

void BM_PropositionsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_all_propositions_serial());
}

void BM_PropositionsParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_all_propositions());
}

}  // namespace

BENCHMARK(BM_SolveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveRootFanOut)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PropositionsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropositionsParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
