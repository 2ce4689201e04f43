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


#include "lposd/lp_decoder.h"

#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <random>

#include <gtest/gtest.h>

#include "lposd/codes.h"
#include "lposd/errors.h"
#include "support/oracles.h"

using namespace lposd;
using lposd::testing::BruteForceDecoder;
using lposd::testing::random_error;

namespace {

double qubit_sum(const std::vector<double> &values, std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += values[i];
    }
    return total;
}

std::size_t count_half(std::span<const double> x) {
    std::size_t count = 0;
    for (double v : x) {
        if (std::abs(v - 0.5) < 1e-6) {
            ++count;
        }
    }
    return count;
}

BitVector random_codeword(const BinaryMatrix &h, std::mt19937_64 &rng) {
    BitVector c(h.cols());
    for (const BitVector &b : kernel_basis(h)) {
        if (rng() & 1) {
            c ^= b;
        }
    }
    return c;
}

}  // namespace

TEST(SyndromeLp, single_check_subsets) {
    BinaryMatrix h = BinaryMatrix::from_dense({{1, 1, 1}});
    TannerGraph g = TannerGraph::from_matrix(h);
    BitVector s = BitVector::from_support(1, std::vector<std::size_t>{0});
    LpModel model = build_syndrome_lp(g, s);
    EXPECT_EQ(model.num_variables(), 3u + 4u);
    ASSERT_EQ(model.subsets.size(), 4u);
    std::vector<std::uint32_t> masks;
    for (const SubsetVar &v : model.subsets) {
        masks.push_back(v.mask);
    }
    EXPECT_EQ(masks, (std::vector<std::uint32_t>{1, 2, 4, 7}));
    // One normalization plus one consistency constraint per edge.
    EXPECT_EQ(model.num_constraints(), 1u + 3u);
}

TEST(SyndromeLp, variable_and_constraint_counts) {
    CssCode code = build_bb_preset("72,12,6");
    BitVector s(code.num_x_checks());
    s.set(4);
    LpModel model = build_syndrome_lp(code, s);
    EXPECT_EQ(model.num_variables(), 72u + 36u * 32u);
    EXPECT_EQ(model.num_constraints(), 36u + code.x_graph().num_edges());
}

TEST(SyndromeLp, zero_syndrome_optimum) {
    CssCode code = build_rotated_surface(3);
    LpModel model = build_syndrome_lp(code, BitVector(code.num_x_checks()));
    LpSolution sol = solve_lp(model);
    EXPECT_NEAR(sol.objective, 0.0, 1e-9);
    for (std::size_t i = 0; i < code.n(); ++i) {
        EXPECT_NEAR(sol.values[i], 0.0, 1e-9);
    }
}

TEST(SyndromeLp, check_weight_cap) {
    BinaryMatrix h(1, 14);
    for (std::size_t i = 0; i < 14; ++i) {
        h.set(0, i);
    }
    TannerGraph g = TannerGraph::from_matrix(h);
    EXPECT_THROW(build_syndrome_lp(g, BitVector(1)), CheckWeightTooLarge);
    EXPECT_THROW(build_error_lp(g, BitVector(14)), CheckWeightTooLarge);
    EXPECT_THROW(build_dual_lp(g, BitVector(14)), CheckWeightTooLarge);
}

TEST(SyndromeLp, overlap_instance_has_fractional_optimum_four) {
    CssCode code = lposd::testing::overlap_example_code();
    BitVector e = lposd::testing::overlap_example_error();
    DecoderContext ctx(code);
    LpDecodeOutput out = lp_decode(ctx, code.syndrome(e));
    EXPECT_NEAR(out.objective, 4.0, 1e-7);
    EXPECT_FALSE(out.integral);
    EXPECT_EQ(count_half(out.x), 8u);
    BruteForceDecoder brute(code.hx());
    EXPECT_EQ(brute.min_weight(code.syndrome(e)), 5u);
}

TEST(SyndromeLp, cycle_instance_has_fractional_optimum_eight) {
    CssCode code = lposd::testing::cycle_example_code();
    BitVector e = lposd::testing::cycle_example_error();
    BitVector s = code.syndrome(e);
    LpModel model = build_syndrome_lp(code, s);
    LpSolution sol = solve_lp(model);
    EXPECT_NEAR(sol.objective, 8.0, 1e-7);
    EXPECT_FALSE(is_integral(model, sol));
    BruteForceDecoder brute(code.hx());
    EXPECT_EQ(brute.min_weight(s), 9u);
}

TEST(LpDecode, weighted_objective) {
    CssCode code = build_rotated_surface(3);
    std::vector<double> probs(code.n(), 0.1);
    probs[4] = 0.4;
    std::vector<double> w = log_likelihood_weights(probs);
    EXPECT_NEAR(w[0], std::log(0.9 / 0.1), 1e-12);
    DecoderContext ctx(code.hx(), w);
    BitVector e = BitVector::from_support(code.n(), std::vector<std::size_t>{4});
    LpDecodeOutput out = lp_decode(ctx, code.syndrome(e));
    EXPECT_TRUE(out.integral);
    EXPECT_EQ(round_independent(out.x), e);
    EXPECT_NEAR(out.objective, w[4], 1e-9);
}

TEST(LpDecode, zero_syndrome_short_circuits) {
    DecoderContext ctx(build_rotated_surface(5));
    LpDecodeOutput out = lp_decode(ctx, BitVector(ctx.num_checks()));
    EXPECT_TRUE(out.integral);
    EXPECT_EQ(out.iterations, 0u);
    EXPECT_EQ(out.objective, 0.0);
    EXPECT_TRUE(round_independent(out.x).none());
}

TEST(LpDecode, integral_optima_are_minimum_weight) {
    std::mt19937_64 rng(4);
    BinaryMatrix rep = repetition_code(3);
    for (const CssCode &code : {build_rotated_surface(3), build_hgp(rep, rep)}) {
        BruteForceDecoder brute(code.hx());
        DecoderContext ctx(code);
        std::size_t integral = 0;
        for (int trial = 0; trial < 150; ++trial) {
            BitVector e = random_error(code.n(), 0.2, rng);
            BitVector s = code.syndrome(e);
            LpDecodeOutput out = lp_decode(ctx, s);
            EXPECT_LE(out.objective, static_cast<double>(brute.min_weight(s)) + 1e-7);
            if (out.integral) {
                ++integral;
                BitVector x = round_independent(out.x);
                EXPECT_EQ(code.syndrome(x), s);
                EXPECT_TRUE(brute.is_minimum(s, x));
                EXPECT_NEAR(out.objective, static_cast<double>(brute.min_weight(s)), 1e-7);
            }
        }
        EXPECT_GT(integral, 0u);
    }
}

TEST(LpDecode, feasibility_residuals) {
    std::mt19937_64 rng(8);
    CssCode code = build_bb_preset("72,12,6");
    DecoderContext ctx(code);
    for (int trial = 0; trial < 5; ++trial) {
        BitVector e = random_error(code.n(), 0.04, rng);
        LpModel model = build_syndrome_lp(code, code.syndrome(e));
        LpSolution sol = solve_lp(model);
        EXPECT_LE(model.max_violation(sol.values), 1e-8);
        LpDecodeOutput out = lp_decode(ctx, code.syndrome(e));
        EXPECT_NEAR(out.objective, sol.objective, 1e-7);
    }
}

TEST(LpDecode, cold_and_warm_start_agree) {
    std::mt19937_64 rng(12);
    CssCode code = build_rotated_surface(5);
    DecoderContext ctx(code);
    LpDecodeOptions cold;
    cold.warm_start = false;
    for (int trial = 0; trial < 30; ++trial) {
        BitVector s = code.syndrome(random_error(code.n(), 0.1, rng));
        EXPECT_NEAR(lp_decode(ctx, s).objective, lp_decode(ctx, s, cold).objective, 1e-7);
    }
}

TEST(ErrorLp, zero_reference_matches_zero_syndrome) {
    CssCode code = build_rotated_surface(3);
    LpSolution sol = solve_lp(build_error_lp(code, BitVector(code.n())));
    EXPECT_NEAR(sol.objective, 0.0, 1e-9);
}

TEST(ErrorLp, codeword_reference_reaches_minus_weight) {
    std::mt19937_64 rng(21);
    CssCode code = build_rotated_surface(5);
    for (int trial = 0; trial < 5; ++trial) {
        BitVector c = random_codeword(code.hx(), rng);
        LpSolution sol = solve_lp(build_error_lp(code, c));
        EXPECT_NEAR(sol.objective, -static_cast<double>(c.weight()), 1e-7);
    }
}

TEST(ErrorLp, offset_equals_reference_weight) {
    std::mt19937_64 rng(31);
    CssCode code = build_rotated_surface(5);
    for (int trial = 0; trial < 30; ++trial) {
        BitVector e = random_error(code.n(), 0.1, rng);
        double syndrome_opt = solve_lp(build_syndrome_lp(code, code.syndrome(e))).objective;
        double error_opt = solve_lp(build_error_lp(code, e)).objective;
        EXPECT_NEAR(error_opt + static_cast<double>(e.weight()), syndrome_opt, 1e-7);
    }
}

TEST(DualLp, zero_reference) {
    CssCode code = build_rotated_surface(3);
    LpModel dual = build_dual_lp(code, BitVector(code.n()));
    EXPECT_EQ(dual.objective_sense(), ObjectiveSense::kMaximize);
    EXPECT_NEAR(solve_lp(dual).objective, 0.0, 1e-9);
}

TEST(DualLp, overlap_instance_strong_duality) {
    CssCode code = lposd::testing::overlap_example_code();
    BitVector e = lposd::testing::overlap_example_error();
    double primal = solve_lp(build_error_lp(code, e)).objective;
    LpSolution dual_sol = solve_lp(build_dual_lp(code, e));
    EXPECT_NEAR(primal, -1.0, 1e-7);
    EXPECT_NEAR(dual_sol.objective, primal, 1e-6);
    DualSolution dual = extract_dual(code.x_graph(), dual_sol);
    double sigma_sum = 0.0;
    for (double v : dual.sigma) {
        sigma_sum += v;
    }
    EXPECT_NEAR(sigma_sum, dual.objective, 1e-9);
}

TEST(DualLp, strong_duality_on_random_instances) {
    std::mt19937_64 rng(41);
    CssCode code = build_rotated_surface(5);
    for (int trial = 0; trial < 30; ++trial) {
        BitVector e = random_error(code.n(), 0.1, rng);
        LpModel dual_model = build_dual_lp(code, e);
        LpSolution dual_sol = solve_lp(dual_model);
        double primal = solve_lp(build_error_lp(code, e)).objective;
        EXPECT_NEAR(primal, dual_sol.objective, 1e-6);
        EXPECT_LE(dual_model.max_violation(dual_sol.values), 1e-8);
    }
}

TEST(DualLp, weak_duality_for_feasible_points) {
    CssCode code = build_rotated_surface(5);
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        BitVector e = random_error(code.n(), 0.2, rng);
        LpModel dual_model = build_dual_lp(code, e);
        double primal = solve_lp(build_error_lp(code, e)).objective;
        // tau_ij = gamma_i / deg(i); sigma_j = min over even S of the tau sum.
        const TannerGraph &g = code.x_graph();
        std::map<std::string, std::size_t> index;
        for (std::size_t v = 0; v < dual_model.num_variables(); ++v) {
            index[dual_model.variables()[v].name] = v;
        }
        std::vector<double> point(dual_model.num_variables(), 0.0);
        std::size_t assigned = 0;
        double objective = 0.0;
        for (std::size_t j = 0; j < g.num_checks(); ++j) {
            const auto &f = g.check_qubits[j];
            std::vector<double> tau;
            for (std::size_t i : f) {
                double gamma = e.get(i) ? -1.0 : 1.0;
                tau.push_back(gamma / static_cast<double>(g.qubit_checks[i].size()));
            }
            double sigma = 0.0;
            for (std::uint32_t mask = 0; mask < (1u << f.size()); ++mask) {
                if (std::popcount(mask) % 2 != 0) {
                    continue;
                }
                double sum = 0.0;
                for (std::size_t p = 0; p < f.size(); ++p) {
                    if ((mask >> p) & 1u) {
                        sum += tau[p];
                    }
                }
                sigma = std::min(sigma, sum);
            }
            point[index.at("sigma_" + std::to_string(j))] = sigma;
            for (std::size_t p = 0; p < f.size(); ++p) {
                point[index.at("tau_" + std::to_string(f[p]) + "_" + std::to_string(j))] = tau[p];
            }
            assigned += 1 + f.size();
            objective += sigma;
        }
        ASSERT_EQ(assigned, dual_model.num_variables());
        EXPECT_LE(dual_model.max_violation(point), 1e-12);
        EXPECT_NEAR(dual_model.objective(point), objective, 1e-12);
        EXPECT_LE(objective, primal + 1e-9);
    }
}

TEST(RoundIndependent, examples) {
    std::vector<double> a{0.2, 0.8};
    EXPECT_EQ(round_independent(a).support(), (std::vector<std::size_t>{1}));
    std::vector<double> half{0.5, 0.0, 0.5};
    EXPECT_EQ(round_independent(half).support(), (std::vector<std::size_t>{0, 2}));
    std::vector<double> integral{1.0, 0.0, 1.0, 1.0};
    EXPECT_EQ(round_independent(integral).support(), (std::vector<std::size_t>{0, 2, 3}));
}

TEST(RoundIndependent, half_certificate_breaks_syndrome) {
    CssCode code = lposd::testing::overlap_example_code();
    BitVector s = code.syndrome(lposd::testing::overlap_example_error());
    LpDecodeOutput out = lp_decode(DecoderContext(code), s);
    BitVector rounded = round_independent(out.x);
    EXPECT_EQ(rounded.weight(), 8u);
    EXPECT_NE(code.syndrome(rounded), s);
}

TEST(Lemma1, zero_reference_is_identity) {
    CssCode code = build_rotated_surface(3);
    std::mt19937_64 rng(61);
    BitVector e = random_error(code.n(), 0.3, rng);
    LpSolution sol = solve_lp(build_syndrome_lp(code, code.syndrome(e)));
    BitVector zero(code.n());
    EXPECT_EQ(lemma1_map(code.x_graph(), sol, zero).values, sol.values);
}

TEST(Lemma1, map_preserves_feasibility_and_shifts_objective) {
    std::mt19937_64 rng(71);
    CssCode code = build_rotated_surface(5);
    for (int trial = 0; trial < 100; ++trial) {
        BitVector e = random_error(code.n(), 0.12, rng);
        BitVector s = code.syndrome(e);
        LpModel error_model = build_error_lp(code, e);
        LpModel syndrome_model = build_syndrome_lp(code, s);
        LpSolution error_sol = solve_lp(error_model);
        LpSolution mapped = lemma1_map(code.x_graph(), error_sol, e);
        EXPECT_LE(syndrome_model.max_violation(mapped.values), 1e-8);
        EXPECT_NEAR(mapped.objective - error_sol.objective, static_cast<double>(e.weight()), 1e-9);
        EXPECT_NEAR(syndrome_model.objective(mapped.values), qubit_sum(mapped.values, code.n()), 1e-12);
        // The image of an optimum is an optimum of the syndrome LP.
        EXPECT_NEAR(mapped.objective, solve_lp(syndrome_model).objective, 1e-7);
        // Vertex values are dyadic here, so the reflection round-trips exactly.
        LpSolution back = lemma1_inverse(code.x_graph(), mapped, e);
        EXPECT_EQ(back.values, error_sol.values);
        EXPECT_NEAR(back.objective, error_sol.objective, 1e-9);
        // The other direction lands on a feasible point of the error LP.
        LpSolution syn_sol = solve_lp(syndrome_model);
        LpSolution pulled = lemma1_inverse(code.x_graph(), syn_sol, e);
        EXPECT_LE(error_model.max_violation(pulled.values), 1e-8);
        EXPECT_NEAR(pulled.objective + static_cast<double>(e.weight()), syn_sol.objective, 1e-9);
    }
}

TEST(Lemma1, round_trip_on_arbitrary_values) {
    std::mt19937_64 rng(81);
    CssCode code = build_rotated_surface(3);
    BitVector e = random_error(code.n(), 0.4, rng);
    LpModel model = build_error_lp(code, e);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> values(model.num_variables());
    for (double &v : values) {
        v = std::ldexp(std::floor(unit(rng) * 1024.0), -10);
    }
    std::vector<double> there = error_to_syndrome_values(code.x_graph(), values, e);
    EXPECT_EQ(syndrome_to_error_values(code.x_graph(), there, e), values);
}

TEST(Lemma1, decoders_agree_through_the_map) {
    std::mt19937_64 rng(91);
    CssCode code = build_rotated_surface(5);
    for (int trial = 0; trial < 50; ++trial) {
        BitVector e = random_error(code.n(), 0.1, rng);
        LpSolution error_sol = solve_lp(build_error_lp(code, e));
        LpSolution mapped = lemma1_map(code.x_graph(), error_sol, e);
        std::vector<double> x(mapped.values.begin(), mapped.values.begin() + code.n());
        if (mapped.integral) {
            EXPECT_EQ(code.syndrome(round_independent(x)), code.syndrome(e));
        }
    }
}
