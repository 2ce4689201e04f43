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
#include <span>
#include <vector>

#include "lposd/css_code.h"
#include "lposd/gf2.h"
#include "lposd/lp_decoder.h"
#include "lposd/osd.h"

namespace lposd {

struct BpConfig {
    std::size_t max_iterations = 0;  ///< 0 means the block length n.
    double p = 0.01;                 ///< Channel probability, used when no per-qubit priors are given.
};

struct BpResult {
    BitVector hard;
    std::vector<double> soft;  ///< Posterior-like reliability 1 / (1 + exp(L_i)).
    bool converged = false;
    std::size_t iterations = 0;
};

/// Scaling factor 1 - 2^-t of iteration t (t >= 1).
double min_sum_scale(std::size_t t);

inline constexpr double kBpClamp = 50.0;

/// Flooding min-sum on the Tanner graph of H. `priors` overrides cfg.p per qubit.
BpResult min_sum_bp(const TannerGraph &graph, const BitVector &s, const BpConfig &cfg,
                    std::span<const double> priors = {});
BpResult min_sum_bp(const CssCode &code, const BitVector &s, const BpConfig &cfg);

DecodeResult bp_osd_decode(const DecoderContext &ctx, const BitVector &s, const BpConfig &bp_cfg,
                           const OsdConfig &osd_cfg);
DecodeResult bp_osd_decode(const CssCode &code, const BitVector &s, const BpConfig &bp_cfg, const OsdConfig &osd_cfg);
/// BP alone: the hard decision whether or not it converged.
DecodeResult bp_decode(const DecoderContext &ctx, const BitVector &s, const BpConfig &bp_cfg);

}  // namespace lposd
