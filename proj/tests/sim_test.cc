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


#include "lposd/sim.h"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>
#include "json.hpp"

#include "lposd/codes.h"
#include "lposd/errors.h"
#include "support/oracles.h"

using namespace lposd;

namespace {

// Closed-form Wilson score bounds at z = 1.96 (two-sided 95%).
Interval wilson_reference(double k, double n) {
    double z = 1.959963984540054;
    double phat = k / n;
    double denom = 1 + z * z / n;
    double centre = (phat + z * z / (2 * n)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

void expect_same(const PointResult &a, const PointResult &b) {
    EXPECT_EQ(a.decoder, b.decoder);
    EXPECT_EQ(a.trials, b.trials);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.wrong_syndrome, b.wrong_syndrome);
    EXPECT_EQ(a.fractional_lp, b.fractional_lp);
    EXPECT_EQ(a.solver_failures, b.solver_failures);
    EXPECT_EQ(a.p_l, b.p_l);
    EXPECT_EQ(a.ci.low, b.ci.low);
    EXPECT_EQ(a.ci.high, b.ci.high);
}

BitVector surface_logical(const CssCode &code) {
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << code.n()); ++bits) {
        BitVector e(code.n());
        for (std::size_t i = 0; i < code.n(); ++i) {
            e.set(i, (bits >> i) & 1u);
        }
        if (code.hx().multiply(e).none() && !in_rowspace(code.hz(), e)) {
            return e;
        }
    }
    return BitVector(code.n());
}

}  // namespace

TEST(SampleError, statistics) {
    std::mt19937_64 rng = trial_rng(1, 0, 0);
    BitVector e = sample_error(100000, 0.1, rng);
    double sigma = std::sqrt(100000 * 0.1 * 0.9);
    EXPECT_LE(std::abs(static_cast<double>(e.weight()) - 10000.0), 3 * sigma);
    std::mt19937_64 tiny = trial_rng(1, 0, 1);
    EXPECT_EQ(sample_error(1000, 1e-12, tiny).weight(), 0u);
}

TEST(SampleError, reproducible_streams) {
    std::mt19937_64 a = trial_rng(5, 2, 9);
    std::mt19937_64 b = trial_rng(5, 2, 9);
    EXPECT_EQ(sample_error(500, 0.2, a), sample_error(500, 0.2, b));
    std::mt19937_64 c = trial_rng(5, 2, 10);
    std::mt19937_64 d = trial_rng(5, 2, 9);
    EXPECT_NE(sample_error(500, 0.2, c), sample_error(500, 0.2, d));
    std::mt19937_64 u = trial_rng(0, 0, 0);
    for (int i = 0; i < 1000; ++i) {
        double v = uniform01(u);
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 1.0);
    }
}

TEST(IsSuccess, examples) {
    CssCode code = build_rotated_surface(3);
    std::mt19937_64 rng(3);
    BitVector e = lposd::testing::random_error(code.n(), 0.3, rng);
    EXPECT_TRUE(is_success(code, e, e));
    EXPECT_TRUE(is_success(code, e, e ^ code.hz().row(1)));
    BitVector logical = surface_logical(code);
    ASSERT_TRUE(logical.any());
    EXPECT_FALSE(is_success(code, e, e ^ logical));
    RowSpace space(code.hz());
    EXPECT_FALSE(is_success(space, e, e ^ logical));
}

TEST(Wilson, matches_closed_form) {
    for (auto [k, n] : std::vector<std::pair<std::size_t, std::size_t>>{{0, 100}, {1, 100}, {50, 100}, {7, 20000}, {100, 100}}) {
        Interval got = wilson_interval(k, n);
        Interval ref = wilson_reference(static_cast<double>(k), static_cast<double>(n));
        EXPECT_NEAR(got.low, ref.low, 1e-12);
        EXPECT_LE(got.high, 1.0);
        EXPECT_NEAR(got.high, ref.high, 1e-12);
        EXPECT_LE(got.low, static_cast<double>(k) / n);
        EXPECT_GE(got.high, static_cast<double>(k) / n);
    }
    EXPECT_EQ(wilson_interval(0, 100).low, 0.0);
    EXPECT_EQ(wilson_interval(100, 100).high, 1.0);
}

TEST(ParseDecoder, names) {
    EXPECT_EQ(parse_decoder("LP+OSD-CS").kind, DecoderKind::kLpOsdCs);
    EXPECT_EQ(parse_decoder("lp-osd0").kind, DecoderKind::kLpOsd0);
    EXPECT_EQ(parse_decoder("lp-round").kind, DecoderKind::kLpRound);
    EXPECT_EQ(parse_decoder("bp").kind, DecoderKind::kBp);
    EXPECT_EQ(parse_decoder("BP+OSD0").osd.order, OsdOrder::kOsd0);
    EXPECT_EQ(parse_decoder("bp-osdcs").osd.tie_break, TieBreak::kRandom);
    EXPECT_EQ(parse_decoder("lp-osdcs").osd.tie_break, TieBreak::kDistance);
    for (const char *name : {"lp-round", "lp-osd0", "lp-osdcs", "bp", "bp-osd0", "bp-osdcs"}) {
        EXPECT_EQ(parse_decoder(name).name(), name);
    }
    EXPECT_THROW(parse_decoder("magic"), InvalidParameter);
}

TEST(RunPoint, no_errors_sampled) {
    CssCode code = build_rotated_surface(3);
    PointOptions opts;
    opts.trials = 200;
    PointResult r = run_point(code, parse_decoder("lp-osdcs"), 1e-12, opts);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_EQ(r.p_l, 0.0);
    EXPECT_EQ(r.ci.low, 0.0);
    EXPECT_GT(r.ci.high, 0.0);
}

TEST(RunPoint, small_surface_below_physical_rate) {
    CssCode code = build_rotated_surface(3);
    PointOptions opts;
    opts.trials = 10000;
    opts.seed = 4;
    PointResult r = run_point(code, parse_decoder("lp-osdcs"), 0.01, opts);
    EXPECT_EQ(r.trials, 10000u);
    EXPECT_LT(r.p_l, 0.01);
    EXPECT_EQ(r.wrong_syndrome, 0u);
    std::vector<SweepRow> sweep = exhaustive_sweep(code, parse_decoder("lp-osdcs"), 1);
    EXPECT_EQ(sweep[1].failures, 0u);
}

TEST(RunPoint, deterministic_and_worker_independent) {
    CssCode code = build_rotated_surface(5);
    PointOptions opts;
    opts.trials = 300;
    opts.seed = 11;
    opts.point_index = 2;
    for (const char *name : {"lp-round", "lp-osd0", "bp-osdcs"}) {
        DecoderSpec spec = parse_decoder(name);
        PointResult serial = run_point_serial(code, spec, 0.06, opts);
        opts.workers = 1;
        PointResult one = run_point(code, spec, 0.06, opts);
        opts.workers = 4;
        PointResult four = run_point(code, spec, 0.06, opts);
        opts.workers = 0;
        expect_same(serial, one);
        expect_same(serial, four);
        expect_same(serial, run_point(code, spec, 0.06, opts));
    }
}

TEST(RunPoint, multi_decoder_matches_individual_runs) {
    CssCode code = build_rotated_surface(5);
    std::vector<DecoderSpec> specs;
    for (const char *name : {"lp-round", "lp-osd0", "lp-osdcs", "bp", "bp-osd0", "bp-osdcs"}) {
        specs.push_back(parse_decoder(name));
    }
    PointOptions opts;
    opts.trials = 200;
    opts.seed = 3;
    std::vector<PointResult> multi = run_point_multi(code, specs, 0.05, opts);
    std::vector<PointResult> multi_serial = run_point_multi_serial(code, specs, 0.05, opts);
    ASSERT_EQ(multi.size(), specs.size());
    for (std::size_t d = 0; d < specs.size(); ++d) {
        expect_same(multi[d], run_point(code, specs[d], 0.05, opts));
        expect_same(multi[d], multi_serial[d]);
    }
}

TEST(RunPoint, rate_bookkeeping) {
    CssCode code = build_bb_preset("72,12,6");
    std::vector<DecoderSpec> specs{parse_decoder("lp-round"), parse_decoder("lp-osdcs"), parse_decoder("bp-osd0")};
    PointOptions opts;
    opts.trials = 100;
    opts.seed = 8;
    for (const PointResult &r : run_point_multi(code, specs, 0.05, opts)) {
        EXPECT_LE(r.failures, r.trials);
        EXPECT_LE(r.wrong_syndrome, r.failures);
        EXPECT_DOUBLE_EQ(r.p_l, static_cast<double>(r.failures) / r.trials);
        EXPECT_DOUBLE_EQ(r.p_ws, static_cast<double>(r.wrong_syndrome) / r.trials);
        if (r.decoder != "lp-round") {
            EXPECT_EQ(r.wrong_syndrome, 0u);
        } else {
            EXPECT_GT(r.wrong_syndrome, 0u);
        }
    }
}

TEST(RunPoint, failure_rate_grows_with_p) {
    CssCode code = build_rotated_surface(5);
    DecoderSpec spec = parse_decoder("lp-osdcs");
    PointOptions opts;
    opts.trials = 2000;
    PointResult low = run_point(code, spec, 0.02, opts);
    PointResult high = run_point(code, spec, 0.08, opts);
    EXPECT_LE(low.ci.low, high.ci.high);
    EXPECT_LT(low.p_l, high.p_l);
}

TEST(Ensemble, bootstrap_of_zero_table) {
    std::vector<std::size_t> zeros(10, 0);
    Interval ci = bootstrap_interval(zeros, 10, 1000, 1);
    EXPECT_EQ(ci.low, 0.0);
    EXPECT_EQ(ci.high, 0.0);
    std::vector<std::size_t> mixed{0, 1, 2, 0, 5, 0, 0, 1, 0, 3};
    Interval m = bootstrap_interval(mixed, 10, 1000, 1);
    EXPECT_LE(m.low, 0.12);
    EXPECT_GE(m.high, 0.12);
    Interval again = bootstrap_interval(mixed, 10, 1000, 1);
    EXPECT_EQ(m.low, again.low);
    EXPECT_EQ(m.high, again.high);
}

TEST(Ensemble, single_code_reduces_to_run_point) {
    CssCode code = sample_random_hgp(1, 3);
    DecoderSpec spec = parse_decoder("lp-osdcs");
    EnsembleOptions eo;
    eo.n_codes = 1;
    eo.trials_per_code = 300;
    eo.seed = 6;
    PointResult pooled = run_ensemble_on({code}, spec, 0.05, eo);
    PointOptions po;
    po.trials = 300;
    po.seed = 6;
    PointResult single = run_point(code, spec, 0.05, po);
    EXPECT_EQ(pooled.failures, single.failures);
    EXPECT_EQ(pooled.trials, single.trials);
}

TEST(Ensemble, pools_over_codes) {
    EnsembleOptions eo;
    eo.n_codes = 4;
    eo.seed = 2;
    EXPECT_EQ(eo.trials_per_code, 10u);
    PointResult r = run_ensemble(1, parse_decoder("lp-osdcs"), 0.05, eo);
    EXPECT_EQ(r.trials, 40u);
    EXPECT_LE(r.ci.low, r.p_l);
    EXPECT_GE(r.ci.high, r.p_l);
    EXPECT_THROW(run_ensemble(0, parse_decoder("lp-osdcs"), 0.05, eo), InvalidParameter);
    EXPECT_THROW(run_ensemble(7, parse_decoder("lp-osdcs"), 0.05, eo), InvalidParameter);
}

TEST(Sweep, weight_zero) {
    std::vector<SweepRow> rows = exhaustive_sweep(build_rotated_surface(3), parse_decoder("lp-osdcs"), 0);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].weight, 0u);
    EXPECT_EQ(rows[0].errors, 1u);
    EXPECT_EQ(rows[0].failures, 0u);
}

TEST(Sweep, distance_five_corrects_weight_two) {
    CssCode code = build_rotated_surface(5);
    std::vector<SweepRow> rows = exhaustive_sweep(code, parse_decoder("lp-osdcs"), 2);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1].errors, 25u);
    EXPECT_EQ(rows[2].errors, 300u);
    for (const SweepRow &r : rows) {
        EXPECT_EQ(r.failures, 0u);
    }
}

TEST(Sweep, serial_matches_parallel) {
    CssCode code = build_rotated_surface(3);
    for (const char *name : {"lp-round", "lp-osd0", "bp"}) {
        std::vector<SweepRow> par = exhaustive_sweep(code, parse_decoder(name), 3, 4);
        std::vector<SweepRow> ser = exhaustive_sweep_serial(code, parse_decoder(name), 3);
        ASSERT_EQ(par.size(), ser.size());
        for (std::size_t w = 0; w < par.size(); ++w) {
            EXPECT_EQ(par[w].errors, ser[w].errors);
            EXPECT_EQ(par[w].failures, ser[w].failures);
        }
        EXPECT_EQ(ser[3].errors, 84u);
    }
}

TEST(Sweep, enumeration_guard) {
    EXPECT_THROW(exhaustive_sweep(build_bb_preset("144,12,12"), parse_decoder("lp-osdcs"), 5), EnumerationTooLarge);
}

TEST(DetectorDecode, weighted_objective_prefers_likely_columns) {
    // Two columns explain the same detector; the likelier one must win.
    BinaryMatrix h = BinaryMatrix::from_rows(4, {{0, 1, 2}, {2, 3}});
    std::vector<double> probs{0.001, 0.2, 0.01, 0.01};
    BitVector s = BitVector::from_support(2, std::vector<std::size_t>{0});
    DecodeResult r = detector_decode(h, probs, s);
    EXPECT_EQ(r.correction.support(), (std::vector<std::size_t>{1}));
    probs = {0.2, 0.001, 0.01, 0.01};
    EXPECT_EQ(detector_decode(h, probs, s).correction.support(), (std::vector<std::size_t>{0}));
    BitVector both = BitVector::from_support(2, std::vector<std::size_t>{0, 1});
    DecodeResult rb = detector_decode(h, probs, both);
    EXPECT_EQ(h.multiply(rb.correction), both);
}

TEST(Records, json_fields_and_determinism) {
    CssCode code = build_rotated_surface(3);
    DecoderSpec spec = parse_decoder("lp-round");
    PointOptions opts;
    opts.trials = 500;
    opts.seed = 21;
    PointResult r = run_point(code, spec, 0.08, opts);
    RecordOptions rec;
    rec.timing = false;
    std::ostringstream a;
    write_point_record(a, code, spec, r, opts, rec);
    std::ostringstream b;
    write_point_record(b, code, spec, run_point(code, spec, 0.08, opts), opts, rec);
    EXPECT_EQ(a.str(), b.str());
    nlohmann::json j = nlohmann::json::parse(a.str());
    EXPECT_EQ(j.at("decoder"), "lp-round");
    EXPECT_EQ(j.at("trials"), 500);
    EXPECT_EQ(j.at("failures"), r.failures);
    EXPECT_EQ(j.at("wrong_syndrome"), r.wrong_syndrome);
    EXPECT_EQ(j.at("seed"), 21);
    EXPECT_DOUBLE_EQ(j.at("p").get<double>(), 0.08);
    EXPECT_DOUBLE_EQ(j.at("p_L").get<double>(), r.p_l);
    EXPECT_TRUE(j.contains("ci_low"));
    EXPECT_TRUE(j.contains("fractional_lp"));
    EXPECT_FALSE(j.contains("wall_seconds"));
    std::ostringstream timed;
    write_point_record(timed, code, spec, r, opts);
    EXPECT_TRUE(nlohmann::json::parse(timed.str()).contains("wall_seconds"));
}
