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


#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lposd/bp.h"
#include "lposd/css_code.h"
#include "lposd/gf2.h"
#include "lposd/lp_decoder.h"
#include "lposd/osd.h"

namespace lposd {

enum class DecoderKind { kLpRound, kLpOsd0, kLpOsdCs, kBp, kBpOsd0, kBpOsdCs };

struct DecoderSpec {
    DecoderKind kind = DecoderKind::kLpOsdCs;
    OsdConfig osd;  ///< order is implied by kind; lambda and tie_break are used.
    BpConfig bp;
    LpDecodeOptions lp;

    bool uses_lp() const;
    bool uses_bp() const;
    std::string name() const;
};

/// Accepts lp-round, lp-osd0, lp-osdcs, bp, bp-osd0, bp-osdcs (case and
/// separator insensitive, e.g. "LP+OSD0"). BP decoders default to random ties.
DecoderSpec parse_decoder(const std::string &text);

DecodeResult decode(const DecoderContext &ctx, const DecoderSpec &spec, const BitVector &s);

/// Independent RNG stream for one trial of one sweep point.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t point, std::uint64_t trial);

/// Uniform double in [0, 1) from 53 random bits.
double uniform01(std::mt19937_64 &rng);

BitVector sample_error(std::size_t n, double p, std::mt19937_64 &rng);

bool is_success(const RowSpace &z_stabilizers, const BitVector &e, const BitVector &e_hat);
bool is_success(const CssCode &code, const BitVector &e, const BitVector &e_hat);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Wilson score interval at 95%.
Interval wilson_interval(std::size_t failures, std::size_t trials);

struct PointResult {
    std::string decoder;
    double p = 0.0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::size_t wrong_syndrome = 0;    ///< Failures whose correction misses the syndrome.
    std::size_t fractional_lp = 0;     ///< Trials whose LP optimum was fractional.
    std::size_t solver_failures = 0;   ///< LP solver faults, counted as failures.
    double p_l = 0.0;
    Interval ci;
    double p_ws = 0.0;
    double mean_decode_seconds = 0.0;
    double wall_seconds = 0.0;
};

struct PointOptions {
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::uint64_t point_index = 0;
    std::size_t workers = 0;  ///< 0 means the OpenMP default.
};

/// Runs every decoder on the same sampled errors; LP and BP solves are shared
/// between decoders that only differ in post-processing.
std::vector<PointResult> run_point_multi(const CssCode &code, const std::vector<DecoderSpec> &decoders, double p,
                                         const PointOptions &options);
std::vector<PointResult> run_point_multi_serial(const CssCode &code, const std::vector<DecoderSpec> &decoders,
                                                double p, const PointOptions &options);

PointResult run_point(const CssCode &code, const DecoderSpec &decoder, double p, const PointOptions &options);
PointResult run_point_serial(const CssCode &code, const DecoderSpec &decoder, double p, const PointOptions &options);

struct EnsembleOptions {
    std::size_t n_codes = 10;
    std::size_t trials_per_code = 10;
    std::uint64_t seed = 0;
    std::size_t bootstrap_resamples = 1000;
    std::size_t workers = 0;
};

/// Percentile bootstrap over codes of the pooled failure fraction.
Interval bootstrap_interval(std::span<const std::size_t> failures_per_code, std::size_t trials_per_code,
                            std::size_t resamples, std::uint64_t seed);

PointResult run_ensemble_on(const std::vector<CssCode> &codes, const DecoderSpec &decoder, double p,
                            const EnsembleOptions &options);
PointResult run_ensemble(std::size_t s, const DecoderSpec &decoder, double p, const EnsembleOptions &options);

struct SweepRow {
    std::size_t weight = 0;
    std::size_t errors = 0;
    std::size_t failures = 0;
};

inline constexpr std::uint64_t kSweepLimit = 10'000'000;

std::vector<SweepRow> exhaustive_sweep(const CssCode &code, const DecoderSpec &decoder, std::size_t max_weight,
                                       std::size_t workers = 0);
std::vector<SweepRow> exhaustive_sweep_serial(const CssCode &code, const DecoderSpec &decoder, std::size_t max_weight);

/// Weighted LP + OSD-CS on a detector check matrix with per-column probabilities.
DecodeResult detector_decode(const BinaryMatrix &h, std::span<const double> probabilities, const BitVector &s,
                             const OsdConfig &cfg = {});

struct RecordOptions {
    bool timing = true;  ///< Wall-clock fields break bit-identical reruns.
};

void write_point_record(std::ostream &out, const CssCode &code, const DecoderSpec &decoder, const PointResult &result,
                        const PointOptions &options, const RecordOptions &record = {});

}  // namespace lposd
