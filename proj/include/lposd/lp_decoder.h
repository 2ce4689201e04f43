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
#include <optional>
#include <span>
#include <vector>

#include "lposd/css_code.h"
#include "lposd/gf2.h"
#include "lposd/lp.h"

namespace lposd {

inline constexpr std::size_t kDefaultCheckWeightCap = 12;

/// Per-matrix data shared by every decode against the same check matrix:
/// the Tanner graph, an elimination used to find some solution of H e = s,
/// and optional per-column objective weights.
class DecoderContext {
   public:
    explicit DecoderContext(BinaryMatrix h, std::optional<std::vector<double>> weights = std::nullopt);
    explicit DecoderContext(const CssCode &code) : DecoderContext(code.hx()) {}

    const BinaryMatrix &h() const { return h_; }
    const TannerGraph &graph() const { return graph_; }
    std::size_t num_qubits() const { return h_.cols(); }
    std::size_t num_checks() const { return h_.rows(); }
    std::size_t rank() const { return reduction_.pivot_cols.size(); }
    const std::optional<std::vector<double>> &weights() const { return weights_; }

    /// Some e with H e = s (pivot columns only). Throws InconsistentSystem.
    BitVector any_solution(const BitVector &s) const;

   private:
    BinaryMatrix h_;
    TannerGraph graph_;
    RowReduction reduction_;
    std::optional<std::vector<double>> weights_;
};

/// Per-column weight log((1 - p) / p) for the weighted objective.
std::vector<double> log_likelihood_weights(std::span<const double> probabilities);

/// Syndrome-based relaxation: min sum_i c_i x_i over x_i = sum_{S ni i} w_{j,S},
/// sum_S w_{j,S} = 1 with S ranging over subsets of f_j of parity s_j.
/// Qubit variables come first, then w_{j,S} by check and ascending mask.
LpModel build_syndrome_lp(const TannerGraph &graph, const BitVector &s,
                          std::optional<std::span<const double>> weights = std::nullopt,
                          std::size_t check_weight_cap = kDefaultCheckWeightCap);
LpModel build_syndrome_lp(const CssCode &code, const BitVector &s,
                          std::optional<std::span<const double>> weights = std::nullopt);

/// Error-based relaxation around a reference error e': even subsets only,
/// objective sum_{i not in e'} x_i - sum_{i in e'} x_i.
LpModel build_error_lp(const TannerGraph &graph, const BitVector &e_prime,
                       std::size_t check_weight_cap = kDefaultCheckWeightCap);
LpModel build_error_lp(const CssCode &code, const BitVector &e_prime);

/// Dual of the error-based LP: maximize sum_j sigma_j subject to
/// sum_{j in N(i)} tau_ij <= gamma_i and sum_{i in S} tau_ij >= sigma_j
/// for every even S of f_j, gamma_i = (-1)^{e'_i}. Variables: sigma_j
/// for each check, then tau_ij by check and position in f_j.
LpModel build_dual_lp(const TannerGraph &graph, const BitVector &e_prime,
                      std::size_t check_weight_cap = kDefaultCheckWeightCap);
LpModel build_dual_lp(const CssCode &code, const BitVector &e_prime);

struct DualSolution {
    std::vector<double> sigma;
    std::vector<std::vector<double>> tau;  ///< tau[j][p] for the p-th qubit of f_j.
    double objective = 0.0;
};
DualSolution extract_dual(const TannerGraph &graph, const LpSolution &sol);

/// Threshold at 1/2; exactly 1/2 rounds to 1.
BitVector round_independent(std::span<const double> x);

/// Reflection between the error-based LP for e' and the syndrome-based LP
/// for s = H e': x_i -> 1 - x_i on e', w_{j,S} = w'_{j, S + U_j}.
std::vector<double> error_to_syndrome_values(const TannerGraph &graph, std::span<const double> error_values,
                                             const BitVector &e_prime);
std::vector<double> syndrome_to_error_values(const TannerGraph &graph, std::span<const double> syndrome_values,
                                             const BitVector &e_prime);

/// Maps a solution of the error-based LP to the syndrome-based one;
/// the objective shifts by exactly |e'|.
LpSolution lemma1_map(const TannerGraph &graph, const LpSolution &error_solution, const BitVector &e_prime);
LpSolution lemma1_inverse(const TannerGraph &graph, const LpSolution &syndrome_solution, const BitVector &e_prime);

struct LpDecodeOptions {
    SimplexOptions simplex;
    std::size_t check_weight_cap = kDefaultCheckWeightCap;
    /// Seed the simplex with the integral point of some solution of H e = s.
    bool warm_start = true;
    const LpSolver *solver = nullptr;  ///< Defaults to RevisedSimplex.
};

struct LpDecodeOutput {
    std::vector<double> x;  ///< Qubit variables only.
    double objective = 0.0;
    bool integral = true;
    std::size_t iterations = 0;
};

/// Solves the syndrome-based LP for s. An all-zero syndrome returns x = 0
/// without calling the solver.
LpDecodeOutput lp_decode(const DecoderContext &ctx, const BitVector &s, const LpDecodeOptions &options = {});

}  // namespace lposd
