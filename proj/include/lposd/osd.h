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
#include <span>
#include <vector>

#include "lposd/css_code.h"
#include "lposd/gf2.h"
#include "lposd/lp_decoder.h"

namespace lposd {

enum class OsdOrder { kOsd0, kOsdCs };
enum class TieBreak { kDistance, kRandom };

struct OsdConfig {
    OsdOrder order = OsdOrder::kOsdCs;
    std::size_t lambda = 60;
    TieBreak tie_break = TieBreak::kDistance;
    std::uint64_t seed = 0;  ///< Used by TieBreak::kRandom.
};

struct QubitOrdering {
    std::vector<std::size_t> permutation;
    std::vector<std::size_t> committed;  ///< S: first rank(H) independent columns of the permutation.
    std::vector<std::size_t> erased;     ///< T: the remaining columns, in permutation order.
};

/// Permutation by descending soft value, then ascending BFS distance to a
/// flipped check (distance mode) or a seeded shuffle (random mode), then index.
std::vector<std::size_t> soft_permutation(std::span<const double> x, const TannerGraph &graph, const BitVector &s,
                                          const OsdConfig &cfg);

QubitOrdering order_qubits(std::span<const double> x, const DecoderContext &ctx, const BitVector &s,
                           const OsdConfig &cfg);
QubitOrdering order_qubits(std::span<const double> x, const CssCode &code, const BitVector &s, const OsdConfig &cfg);

BitVector osd0(const BinaryMatrix &h, const BitVector &s, const QubitOrdering &ord);
BitVector osd_cs(const BinaryMatrix &h, const BitVector &s, const QubitOrdering &ord, std::size_t lambda);
/// Sequential candidate sweep; same result as osd_cs.
BitVector osd_cs_serial(const BinaryMatrix &h, const BitVector &s, const QubitOrdering &ord, std::size_t lambda);

inline BitVector osd0(const CssCode &code, const BitVector &s, const QubitOrdering &ord) {
    return osd0(code.hx(), s, ord);
}
inline BitVector osd_cs(const CssCode &code, const BitVector &s, const QubitOrdering &ord, std::size_t lambda) {
    return osd_cs(code.hx(), s, ord, lambda);
}

enum class DecodeStage { kIntegralLp, kRounded, kOsd0, kOsdCs, kBp };

const char *stage_name(DecodeStage stage);

struct DecodeResult {
    BitVector correction;
    DecodeStage stage = DecodeStage::kIntegralLp;
    bool lp_integral = true;
    double lp_objective = 0.0;
    std::size_t lp_iterations = 0;
    bool bp_converged = false;
    std::size_t bp_iterations = 0;
};

/// OSD applied to an arbitrary soft vector; a single elimination serves both
/// the ordering and the solve.
BitVector osd_from_soft(const DecoderContext &ctx, const BitVector &s, std::span<const double> x,
                        const OsdConfig &cfg);

/// Post-processing of an already solved LP (shared by the LP-based decoders).
DecodeResult lp_osd_finish(const DecoderContext &ctx, const BitVector &s, const LpDecodeOutput &lp,
                           const OsdConfig &cfg);
DecodeResult lp_round_finish(const LpDecodeOutput &lp);

DecodeResult lp_osd_decode(const DecoderContext &ctx, const BitVector &s, const OsdConfig &cfg,
                           const LpDecodeOptions &lp_options = {});
DecodeResult lp_osd_decode(const CssCode &code, const BitVector &s, const OsdConfig &cfg);
DecodeResult lp_round_decode(const DecoderContext &ctx, const BitVector &s, const LpDecodeOptions &lp_options = {});

}  // namespace lposd
