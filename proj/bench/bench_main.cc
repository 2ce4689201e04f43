// Copyright 2026 The lposd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference vs OpenMP kernel timings.

#include <benchmark/benchmark.h>

#include <random>

#include "lposd/codes.h"
#include "lposd/lp_decoder.h"
#include "lposd/osd.h"
#include "lposd/sim.h"

using namespace lposd;

namespace {

struct OsdFixture {
    CssCode code = build_bb_preset("72,12,6");
    DecoderContext ctx{code};
    BitVector s;
    QubitOrdering ord;

    OsdFixture() {
        std::mt19937_64 rng(3);
        std::bernoulli_distribution flip(0.06);
        BitVector e(code.n());
        for (std::size_t i = 0; i < code.n(); ++i) {
            if (flip(rng)) {
                e.set(i);
            }
        }
        s = code.syndrome(e);
        LpDecodeOutput lp = lp_decode(ctx, s);
        ord = order_qubits(lp.x, ctx, s, OsdConfig{});
    }
};

OsdFixture &osd_fixture() {
    static OsdFixture f;
    return f;
}

void BM_OsdCs(benchmark::State &state) {
    OsdFixture &f = osd_fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(state.range(0) ? osd_cs(f.code.hx(), f.s, f.ord, 60)
                                                : osd_cs_serial(f.code.hx(), f.s, f.ord, 60));
    }
}
BENCHMARK(BM_OsdCs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RunPoint(benchmark::State &state) {
    CssCode code = build_rotated_surface(5);
    DecoderSpec spec = parse_decoder("lp-osd0");
    PointOptions opts;
    opts.trials = 200;
    opts.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(state.range(0) ? run_point(code, spec, 0.05, opts)
                                                : run_point_serial(code, spec, 0.05, opts));
    }
}
BENCHMARK(BM_RunPoint)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveSweep(benchmark::State &state) {
    CssCode code = build_rotated_surface(3);
    DecoderSpec spec = parse_decoder("lp-osdcs");
    for (auto _ : state) {
        benchmark::DoNotOptimize(state.range(0) ? exhaustive_sweep(code, spec, 2)
                                                : exhaustive_sweep_serial(code, spec, 2));
    }
}
BENCHMARK(BM_ExhaustiveSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ClassicalDistance(benchmark::State &state) {
    BinaryMatrix h = sample_biregular_34(4, 1, 100000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(state.range(0) ? classical_distance(h, 100) : classical_distance_serial(h, 100));
    }
}
BENCHMARK(BM_ClassicalDistance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
