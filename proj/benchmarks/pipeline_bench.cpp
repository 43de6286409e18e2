#include <string>

#include <benchmark/benchmark.h>

#include "plofc/blocks.hpp"
#include "plofc/diagnose.hpp"
#include "plofc/lang.hpp"

namespace {

using namespace plofc;

constexpr const char* kBuggy = R"(x1 = a;
y1 = b;
if (x1 < y1)
    then z1 = x1 + 4
    else z1 = y1 + 2
z1 = z1 + y1;
if (y1 > 5)
    then z1 = z1 + 5
    else z1 = z1 - 2
z1 = z1 + 3;
)";

// n chained if-then-else statements accumulating into z.
std::string chain(int n) {
  std::string s = "z = a + 1\n";
  for (int i = 0; i < n; ++i) {
    s += "if (z > " + std::to_string(i * 3) + ")\n";
    s += "  then z = z + " + std::to_string(i + 2) + "\n";
    s += "  else z = z - " + std::to_string(i + 1) + "\n";
  }
  return s;
}

BranchPlan first_path(const Program& p) {
  const auto blocks = build_blocks(p);
  return branch_plan(enumerate_paths(all_path_formula(blocks)).front(), blocks);
}

void BM_Parse(benchmark::State& state) {
  const std::string source = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parse_program(source));
}
BENCHMARK(BM_Parse)->Arg(4)->Arg(16)->Arg(64);

void BM_Execute(benchmark::State& state) {
  const Program p = parse_program(chain(static_cast<int>(state.range(0))));
  const Env inputs{{"a", 7}};
  for (auto _ : state) benchmark::DoNotOptimize(execute(p, inputs));
}
BENCHMARK(BM_Execute)->Arg(4)->Arg(16)->Arg(64);

void BM_EnumeratePaths(benchmark::State& state) {
  const auto formula =
      all_path_formula(build_blocks(parse_program(chain(static_cast<int>(state.range(0))))));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_paths(formula));
}
BENCHMARK(BM_EnumeratePaths)->DenseRange(4, 16, 4);

void BM_DiagnoseExample(benchmark::State& state) {
  const Program p = parse_program(kBuggy);
  const FaultQuery query{p, {{"a", 3}, {"b", 4}}, "z1", 17, first_path(p), false};
  for (auto _ : state) benchmark::DoNotOptimize(predict_faulty_lines(query));
}
BENCHMARK(BM_DiagnoseExample);

void BM_DiagnoseChain(benchmark::State& state) {
  const Program p = parse_program(chain(static_cast<int>(state.range(0))));
  const Env inputs{{"a", 7}};
  const std::int64_t observed = execute(p, inputs).final_env.at("z");
  const FaultQuery query{p, inputs, "z", observed + 3, {}, state.range(1) != 0};
  for (auto _ : state) benchmark::DoNotOptimize(predict_faulty_lines(query));
}
BENCHMARK(BM_DiagnoseChain)->Args({16, 0})->Args({16, 1})->Args({64, 0})->Args({64, 1});

}  // namespace

BENCHMARK_MAIN();
