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


#include "lposd/bp.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "lposd/codes.h"
#include "lposd/errors.h"
#include "support/oracles.h"

using namespace lposd;
using lposd::testing::random_error;

namespace {

struct ReferenceBp {
    std::vector<double> llr;
    std::size_t iterations = 0;
    bool converged = false;
};

// Direct flooding min-sum with per-edge maps and explicit exclusion loops.
ReferenceBp reference_min_sum(const BinaryMatrix &h, const BitVector &s, double p, std::size_t max_iter) {
    std::size_t n = h.cols();
    std::size_t m = h.rows();
    double prior = std::log((1.0 - p) / p);
    std::map<std::pair<std::size_t, std::size_t>, double> q;  // (i, j) variable to check
    std::map<std::pair<std::size_t, std::size_t>, double> r;  // (j, i) check to variable
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i : h.row(j).support()) {
            q[{i, j}] = prior;
        }
    }
    ReferenceBp out;
    out.llr.assign(n, prior);
    for (std::size_t t = 1; t <= max_iter; ++t) {
        double alpha = 1.0 - std::pow(2.0, -static_cast<double>(t));
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<std::size_t> f = h.row(j).support();
            for (std::size_t i : f) {
                bool negative = s.get(j);
                double mag = 2 * kBpClamp;
                for (std::size_t k : f) {
                    if (k != i) {
                        negative ^= q[{k, j}] < 0;
                        mag = std::min(mag, std::abs(q[{k, j}]));
                    }
                }
                r[{j, i}] = std::clamp(negative ? -alpha * mag : alpha * mag, -kBpClamp, kBpClamp);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            double sum = prior;
            for (std::size_t j = 0; j < m; ++j) {
                if (h.get(j, i)) {
                    sum += r[{j, i}];
                }
            }
            out.llr[i] = sum;
            for (std::size_t j = 0; j < m; ++j) {
                if (h.get(j, i)) {
                    q[{i, j}] = std::clamp(sum - r[{j, i}], -kBpClamp, kBpClamp);
                }
            }
        }
        out.iterations = t;
        BitVector hard(n);
        for (std::size_t i = 0; i < n; ++i) {
            hard.set(i, out.llr[i] < 0);
        }
        if (h.multiply(hard) == s) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace

TEST(MinSumScale, increasing_and_bounded) {
    EXPECT_DOUBLE_EQ(min_sum_scale(1), 0.5);
    EXPECT_DOUBLE_EQ(min_sum_scale(2), 0.75);
    // Strict growth holds while 2^-t is above half an ulp of 1.
    for (std::size_t t = 1; t < 52; ++t) {
        EXPECT_LT(min_sum_scale(t), min_sum_scale(t + 1));
        EXPECT_LE(min_sum_scale(t), 1.0);
        EXPECT_LE(min_sum_scale(t + 60), 1.0);
    }
}

TEST(MinSumBp, zero_syndrome_converges_immediately) {
    CssCode code = build_bb_preset("72,12,6");
    BpResult res = min_sum_bp(code, BitVector(code.num_x_checks()), BpConfig{});
    EXPECT_TRUE(res.converged);
    EXPECT_EQ(res.iterations, 1u);
    EXPECT_TRUE(res.hard.none());
    for (double v : res.soft) {
        EXPECT_LT(v, 0.5);
    }
}

TEST(MinSumBp, bulk_weight_one_errors_recovered) {
    CssCode code = build_rotated_surface(5);
    BpConfig cfg;
    cfg.p = 0.01;
    std::size_t bulk = 0;
    for (std::size_t q = 0; q < code.n(); ++q) {
        if (code.x_graph().qubit_checks[q].size() < 2) {
            continue;  // Boundary qubits have a degenerate partner; see below.
        }
        ++bulk;
        BitVector e = BitVector::from_support(code.n(), std::vector<std::size_t>{q});
        BpResult res = min_sum_bp(code, code.syndrome(e), cfg);
        EXPECT_TRUE(res.converged) << q;
        EXPECT_EQ(res.hard, e) << q;
    }
    EXPECT_GT(bulk, 0u);
}

TEST(MinSumBp, degenerate_boundary_pair_splits_beliefs) {
    CssCode code = build_rotated_surface(5);
    BpConfig cfg;
    std::size_t stuck = 0;
    for (std::size_t q = 0; q < code.n(); ++q) {
        if (code.x_graph().qubit_checks[q].size() != 1) {
            continue;
        }
        BitVector e = BitVector::from_support(code.n(), std::vector<std::size_t>{q});
        BitVector s = code.syndrome(e);
        BpResult res = min_sum_bp(code, s, cfg);
        if (!res.converged) {
            ++stuck;
            EXPECT_EQ(res.iterations, code.n());
        } else {
            EXPECT_EQ(code.syndrome(res.hard), s);
        }
    }
    EXPECT_GT(stuck, 0u);
}

TEST(MinSumBp, matches_reference_implementation) {
    std::mt19937_64 rng(3);
    CssCode code = build_rotated_surface(5);
    for (std::size_t iters : {1u, 2u, 5u, 25u}) {
        for (int trial = 0; trial < 10; ++trial) {
            BitVector s = code.syndrome(random_error(code.n(), 0.1, rng));
            BpConfig cfg;
            cfg.p = 0.05;
            cfg.max_iterations = iters;
            BpResult res = min_sum_bp(code, s, cfg);
            ReferenceBp ref = reference_min_sum(code.hx(), s, cfg.p, iters);
            EXPECT_EQ(res.converged, ref.converged);
            EXPECT_EQ(res.iterations, ref.iterations);
            for (std::size_t i = 0; i < code.n(); ++i) {
                EXPECT_NEAR(res.soft[i], 1.0 / (1.0 + std::exp(ref.llr[i])), 1e-12);
                EXPECT_EQ(res.hard.get(i), ref.llr[i] < 0);
            }
            if (res.converged) {
                EXPECT_EQ(code.syndrome(res.hard), s);
            }
        }
    }
}

TEST(MinSumBp, rejects_bad_probability) {
    CssCode code = build_rotated_surface(3);
    BpConfig cfg;
    cfg.p = 0.5;
    EXPECT_THROW(min_sum_bp(code, BitVector(code.num_x_checks()), cfg), InvalidParameter);
    cfg.p = 0.0;
    EXPECT_THROW(min_sum_bp(code, BitVector(code.num_x_checks()), cfg), InvalidParameter);
}

TEST(BpOsd, zero_syndrome) {
    CssCode code = build_bb_preset("72,12,6");
    DecodeResult res = bp_osd_decode(code, BitVector(code.num_x_checks()), BpConfig{}, OsdConfig{});
    EXPECT_TRUE(res.correction.none());
    EXPECT_TRUE(res.bp_converged);
    EXPECT_EQ(res.stage, DecodeStage::kBp);
}

TEST(BpOsd, converged_and_osd_branches) {
    std::mt19937_64 rng(5);
    CssCode code = build_bb_preset("72,12,6");
    DecoderContext ctx(code);
    BpConfig bp_cfg;
    bp_cfg.p = 0.08;
    bp_cfg.max_iterations = 10;
    OsdConfig osd_cfg;
    osd_cfg.tie_break = TieBreak::kRandom;
    std::size_t converged = 0;
    std::size_t osd_branch = 0;
    for (int trial = 0; trial < 60; ++trial) {
        BitVector s = code.syndrome(random_error(code.n(), 0.08, rng));
        BpResult bp = min_sum_bp(code, s, bp_cfg);
        DecodeResult res = bp_osd_decode(ctx, s, bp_cfg, osd_cfg);
        EXPECT_EQ(res.bp_converged, bp.converged);
        if (bp.converged) {
            ++converged;
            EXPECT_EQ(res.correction, bp.hard);
            EXPECT_EQ(res.stage, DecodeStage::kBp);
        } else {
            ++osd_branch;
            EXPECT_EQ(res.stage, DecodeStage::kOsdCs);
            EXPECT_EQ(code.syndrome(res.correction), s);
        }
    }
    EXPECT_GT(converged, 0u);
    EXPECT_GT(osd_branch, 0u);
}

TEST(BpDecode, reports_convergence) {
    CssCode code = build_rotated_surface(5);
    DecoderContext ctx(code);
    BitVector e = BitVector::from_support(code.n(), std::vector<std::size_t>{12});
    DecodeResult res = bp_decode(ctx, code.syndrome(e), BpConfig{});
    EXPECT_TRUE(res.bp_converged);
    EXPECT_EQ(res.correction, e);
}
