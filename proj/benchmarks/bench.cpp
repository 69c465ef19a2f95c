#include <benchmark/benchmark.h>

#include "tmtrace/cantor.hpp"
#include "tmtrace/dynamics.hpp"
#include "tmtrace/germ.hpp"

using namespace tmtrace;

static void BM_TraceEval(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  BallReal l = BallReal::from_double(1.0, 256);
  BallReal x = BallReal::from_double(1.7, 256);
  for (auto _ : state) {
    BallReal v = trace_eval(n, l, x);
    benchmark::DoNotOptimize(v.mid_double());
  }
}
BENCHMARK(BM_TraceEval)->Arg(8)->Arg(16)->Arg(24);

static void BM_RenormalizedDelta(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  RenormPair pair = trace_renorm_pair(1.0, 256);
  BallReal x = BallReal::from_double(0.7, 256);
  for (auto _ : state) {
    BallReal v = renormalized_delta(pair, k, x);
    benchmark::DoNotOptimize(v.mid_double());
  }
}
BENCHMARK(BM_RenormalizedDelta)->Arg(5)->Arg(10)->Arg(15);

static void BM_PhiStepSeries(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  BallReal l = BallReal::from_double(1.0, 256);
  BallReal x0 = base_point(1.0, 256);
  SeriesPair pair{trace_series(4, l, x0, order, 256),
                  trace_series(5, l, x0, order, 256), 0};
  for (auto _ : state) {
    SeriesPair next = phi_step(pair);
    benchmark::DoNotOptimize(next.curr.coeff(0).mid_double());
  }
}
BENCHMARK(BM_PhiStepSeries)->Arg(32)->Arg(64);

static void BM_BallMul(benchmark::State& state) {
  BallReal a = BallReal::from_double(1.2345, static_cast<int>(state.range(0)));
  BallReal b = BallReal::from_double(6.789, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    BallReal c = a * b;
    benchmark::DoNotOptimize(c.mid_double());
  }
}
BENCHMARK(BM_BallMul)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
