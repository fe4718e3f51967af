// OpenMP kernels against their serial references on the Kodaira instance.

#include <benchmark/benchmark.h>

#include "support.hpp"

using namespace gcdeform;
using namespace gcdeform::test;

namespace {

const DeformationFamily& family() {
  static const DeformationFamily fam = [] {
    const IsotropicSubbundle& l = kodaira().l;
    DeformationMap e = constrain_map(l);
    return reduce_family(l, e, mc_residual(l, e));
  }();
  return fam;
}

// Heisenberg-type frame of dimension 2n + 1: [X_k, Y_k] = Z.
FrameAlgebra heisenberg(std::size_t n) {
  const std::size_t m = 2 * n + 1;
  std::vector<std::string> names;
  StructureConstants c(m);
  for (std::size_t k = 0; k < n; ++k) {
    names.push_back("X" + std::to_string(k + 1));
    names.push_back("Y" + std::to_string(k + 1));
    c(2 * k, 2 * k + 1, m - 1) = 1;
    c(2 * k + 1, 2 * k, m - 1) = -1;
  }
  names.push_back("Z");
  return FrameAlgebra(names, c);
}

template <auto Kernel>
void bracket_table_bench(benchmark::State& state) {
  const FrameAlgebra g = heisenberg(static_cast<std::size_t>(state.range(0)));
  const auto gens = all_generators(g.dim());
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, gens));
}

template <auto Kernel>
void check_points_bench(benchmark::State& state) {
  const auto points = random_bindings(family().free, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(kodaira().l, family().general, points));
}

template <auto Kernel>
void check_strata_bench(benchmark::State& state) {
  const Stratification st = stratify_type(kodaira().l, family().general);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(kodaira().l, family().general, st));
}

}  // namespace

BENCHMARK(bracket_table_bench<bracket_table>)->Name("bracket_table/parallel")->Arg(2)->Arg(4)->Arg(6);
BENCHMARK(bracket_table_bench<bracket_table_serial>)->Name("bracket_table/serial")->Arg(2)->Arg(4)->Arg(6);
BENCHMARK(check_points_bench<check_points>)->Name("check_points/parallel")->Arg(20)->Arg(200);
BENCHMARK(check_points_bench<check_points_serial>)->Name("check_points/serial")->Arg(20)->Arg(200);
BENCHMARK(check_strata_bench<check_strata>)->Name("check_strata/parallel");
BENCHMARK(check_strata_bench<check_strata_serial>)->Name("check_strata/serial");

BENCHMARK_MAIN();
