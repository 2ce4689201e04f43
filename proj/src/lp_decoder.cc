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
#include <string>

#include "lposd/errors.h"

namespace lposd {

DecoderContext::DecoderContext(BinaryMatrix h, std::optional<std::vector<double>> weights)
    : h_(std::move(h)), graph_(TannerGraph::from_matrix(h_)), reduction_(row_reduce(h_)), weights_(std::move(weights)) {
    if (weights_ && weights_->size() != h_.cols()) {
        throw InvalidParameter("weight vector length does not match the number of columns");
    }
}

BitVector DecoderContext::any_solution(const BitVector &s) const {
    BitVector t = reduction_.transform.multiply(s);
    std::size_t r = rank();
    BitVector e(num_qubits());
    for (std::size_t i : t.support()) {
        if (i >= r) {
            throw InconsistentSystem("syndrome is not in the column space of the check matrix");
        }
        e.set(reduction_.pivot_cols[i]);
    }
    return e;
}

std::vector<double> log_likelihood_weights(std::span<const double> probabilities) {
    std::vector<double> w;
    w.reserve(probabilities.size());
    for (double p : probabilities) {
        if (!(p > 0.0 && p < 1.0)) {
            throw InvalidParameter("error probabilities must lie strictly between 0 and 1");
        }
        w.push_back(std::log((1.0 - p) / p));
    }
    return w;
}

namespace {

// Layout shared by every decoding LP: x_0..x_{n-1}, then for each check j
// the subsets of f_j of one parity, ascending by mask. Within one parity
// class the masks pair up as (2t, 2t+1), so mask m sits at offset m >> 1.
struct SubsetLayout {
    std::vector<std::size_t> base;

    SubsetLayout(const TannerGraph &graph, std::size_t check_weight_cap, std::size_t first_var) {
        std::size_t next = first_var;
        base.reserve(graph.num_checks());
        for (std::size_t j = 0; j < graph.num_checks(); ++j) {
            std::size_t w = graph.check_qubits[j].size();
            if (w > check_weight_cap) {
                throw CheckWeightTooLarge("check " + std::to_string(j) + " has weight " + std::to_string(w) +
                                          " above the cap of " + std::to_string(check_weight_cap));
            }
            base.push_back(next);
            next += w == 0 ? 1 : (std::size_t{1} << (w - 1));
        }
    }

    std::size_t var(std::size_t check, std::uint32_t mask) const { return base[check] + (mask >> 1); }
};

std::uint32_t restriction_mask(const std::vector<std::size_t> &support, const BitVector &v) {
    std::uint32_t mask = 0;
    for (std::size_t p = 0; p < support.size(); ++p) {
        if (v.get(support[p])) {
            mask |= std::uint32_t{1} << p;
        }
    }
    return mask;
}

// Adds w_{j,S} for all S of the requested parity plus the normalization and
// consistency constraints tying them to the qubit variables.
void add_subset_structure(LpModel &model, const TannerGraph &graph, const BitVector &parity,
                          const SubsetLayout &layout) {
    model.check_supports = graph.check_qubits;
    model.check_subset_begin.clear();
    for (std::size_t j = 0; j < graph.num_checks(); ++j) {
        const auto &f = graph.check_qubits[j];
        std::uint32_t par = parity.get(j) ? 1u : 0u;
        std::uint32_t limit = std::uint32_t{1} << f.size();
        model.check_subset_begin.push_back(model.subsets.size());
        std::vector<LpTerm> norm;
        for (std::uint32_t mask = 0; mask < limit; ++mask) {
            if ((std::popcount(mask) & 1u) != par) {
                continue;
            }
            std::size_t v = model.add_variable("w_" + std::to_string(j) + "_" + std::to_string(mask), 0.0, kInfinity, 0.0);
            if (v != layout.var(j, mask)) {
                throw Error("internal: subset variable layout mismatch");
            }
            model.subsets.push_back({j, mask, v});
            norm.push_back({v, 1.0});
        }
        model.add_constraint("norm_" + std::to_string(j), std::move(norm), ConstraintSense::kEqual, 1.0);
    }
    for (std::size_t j = 0; j < graph.num_checks(); ++j) {
        const auto &f = graph.check_qubits[j];
        std::uint32_t par = parity.get(j) ? 1u : 0u;
        std::uint32_t limit = std::uint32_t{1} << f.size();
        for (std::size_t p = 0; p < f.size(); ++p) {
            std::vector<LpTerm> terms;
            for (std::uint32_t mask = 0; mask < limit; ++mask) {
                if ((std::popcount(mask) & 1u) == par && ((mask >> p) & 1u)) {
                    terms.push_back({layout.var(j, mask), 1.0});
                }
            }
            terms.push_back({f[p], -1.0});
            model.add_constraint("edge_" + std::to_string(f[p]) + "_" + std::to_string(j), std::move(terms),
                                 ConstraintSense::kEqual, 0.0);
        }
    }
}

}  // namespace

LpModel build_syndrome_lp(const TannerGraph &graph, const BitVector &s, std::optional<std::span<const double>> weights,
                          std::size_t check_weight_cap) {
    if (s.size() != graph.num_checks()) {
        throw InvalidParameter("syndrome length does not match the number of checks");
    }
    if (weights && weights->size() != graph.num_qubits()) {
        throw InvalidParameter("weight vector length does not match the number of qubits");
    }
    std::size_t n = graph.num_qubits();
    SubsetLayout layout(graph, check_weight_cap, n);
    LpModel model;
    for (std::size_t i = 0; i < n; ++i) {
        model.add_variable("x_" + std::to_string(i), 0.0, kInfinity, weights ? (*weights)[i] : 1.0);
    }
    model.num_qubit_vars = n;
    add_subset_structure(model, graph, s, layout);
    return model;
}

LpModel build_syndrome_lp(const CssCode &code, const BitVector &s, std::optional<std::span<const double>> weights) {
    return build_syndrome_lp(code.x_graph(), s, weights);
}

LpModel build_error_lp(const TannerGraph &graph, const BitVector &e_prime, std::size_t check_weight_cap) {
    if (e_prime.size() != graph.num_qubits()) {
        throw InvalidParameter("reference error length does not match the number of qubits");
    }
    std::size_t n = graph.num_qubits();
    SubsetLayout layout(graph, check_weight_cap, n);
    LpModel model;
    for (std::size_t i = 0; i < n; ++i) {
        model.add_variable("x_" + std::to_string(i), 0.0, kInfinity, e_prime.get(i) ? -1.0 : 1.0);
    }
    model.num_qubit_vars = n;
    add_subset_structure(model, graph, BitVector(graph.num_checks()), layout);
    return model;
}

LpModel build_error_lp(const CssCode &code, const BitVector &e_prime) {
    return build_error_lp(code.x_graph(), e_prime);
}

LpModel build_dual_lp(const TannerGraph &graph, const BitVector &e_prime, std::size_t check_weight_cap) {
    if (e_prime.size() != graph.num_qubits()) {
        throw InvalidParameter("reference error length does not match the number of qubits");
    }
    LpModel model;
    model.set_objective_sense(ObjectiveSense::kMaximize);
    std::size_t m = graph.num_checks();
    for (std::size_t j = 0; j < m; ++j) {
        if (graph.check_qubits[j].size() > check_weight_cap) {
            throw CheckWeightTooLarge("check " + std::to_string(j) + " exceeds the weight cap");
        }
        model.add_variable("sigma_" + std::to_string(j), -kInfinity, kInfinity, 1.0);
    }
    std::vector<std::vector<std::size_t>> tau(m);
    std::vector<std::vector<LpTerm>> qubit_terms(graph.num_qubits());
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i : graph.check_qubits[j]) {
            std::size_t v = model.add_variable("tau_" + std::to_string(i) + "_" + std::to_string(j), -kInfinity, kInfinity, 0.0);
            tau[j].push_back(v);
            qubit_terms[i].push_back({v, 1.0});
        }
    }
    for (std::size_t i = 0; i < graph.num_qubits(); ++i) {
        model.add_constraint("qubit_" + std::to_string(i), std::move(qubit_terms[i]), ConstraintSense::kLessEqual,
                             e_prime.get(i) ? -1.0 : 1.0);
    }
    for (std::size_t j = 0; j < m; ++j) {
        std::uint32_t limit = std::uint32_t{1} << graph.check_qubits[j].size();
        for (std::uint32_t mask = 0; mask < limit; mask += 1) {
            if (std::popcount(mask) & 1u) {
                continue;
            }
            std::vector<LpTerm> terms{{j, -1.0}};
            for (std::size_t p = 0; p < tau[j].size(); ++p) {
                if ((mask >> p) & 1u) {
                    terms.push_back({tau[j][p], 1.0});
                }
            }
            model.add_constraint("subset_" + std::to_string(j) + "_" + std::to_string(mask), std::move(terms),
                                 ConstraintSense::kGreaterEqual, 0.0);
        }
    }
    return model;
}

LpModel build_dual_lp(const CssCode &code, const BitVector &e_prime) {
    return build_dual_lp(code.x_graph(), e_prime);
}

DualSolution extract_dual(const TannerGraph &graph, const LpSolution &sol) {
    DualSolution out;
    std::size_t m = graph.num_checks();
    out.sigma.assign(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(m));
    std::size_t next = m;
    out.tau.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t p = 0; p < graph.check_qubits[j].size(); ++p) {
            out.tau[j].push_back(sol.values[next++]);
        }
    }
    for (double s : out.sigma) {
        out.objective += s;
    }
    return out;
}

BitVector round_independent(std::span<const double> x) {
    BitVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= 0.5) {
            out.set(i);
        }
    }
    return out;
}

namespace {

// Shared body of both reflection directions: the map is an involution up
// to which parity class the source subsets belong to.
std::vector<double> reflect(const TannerGraph &graph, std::span<const double> values, const BitVector &e_prime,
                            bool source_is_error_based) {
    std::size_t n = graph.num_qubits();
    if (e_prime.size() != n) {
        throw InvalidParameter("reference error length does not match the number of qubits");
    }
    SubsetLayout layout(graph, 31, n);
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = e_prime.get(i) ? 1.0 - values[i] : values[i];
    }
    for (std::size_t j = 0; j < graph.num_checks(); ++j) {
        const auto &f = graph.check_qubits[j];
        std::uint32_t u = restriction_mask(f, e_prime);
        std::uint32_t target_parity = source_is_error_based ? (std::popcount(u) & 1u) : 0u;
        std::uint32_t limit = std::uint32_t{1} << f.size();
        for (std::uint32_t mask = 0; mask < limit; ++mask) {
            if ((std::popcount(mask) & 1u) != target_parity) {
                continue;
            }
            out[layout.var(j, mask)] = values[layout.var(j, mask ^ u)];
        }
    }
    return out;
}

}  // namespace

std::vector<double> error_to_syndrome_values(const TannerGraph &graph, std::span<const double> error_values,
                                             const BitVector &e_prime) {
    return reflect(graph, error_values, e_prime, true);
}

std::vector<double> syndrome_to_error_values(const TannerGraph &graph, std::span<const double> syndrome_values,
                                             const BitVector &e_prime) {
    return reflect(graph, syndrome_values, e_prime, false);
}

LpSolution lemma1_map(const TannerGraph &graph, const LpSolution &error_solution, const BitVector &e_prime) {
    LpSolution out = error_solution;
    out.values = error_to_syndrome_values(graph, error_solution.values, e_prime);
    out.objective = 0.0;
    for (std::size_t i = 0; i < graph.num_qubits(); ++i) {
        out.objective += out.values[i];
    }
    out.integral = is_integral(std::span<const double>(out.values.data(), graph.num_qubits()));
    return out;
}

LpSolution lemma1_inverse(const TannerGraph &graph, const LpSolution &syndrome_solution, const BitVector &e_prime) {
    LpSolution out = syndrome_solution;
    out.values = syndrome_to_error_values(graph, syndrome_solution.values, e_prime);
    out.objective = 0.0;
    for (std::size_t i = 0; i < graph.num_qubits(); ++i) {
        out.objective += e_prime.get(i) ? -out.values[i] : out.values[i];
    }
    out.integral = is_integral(std::span<const double>(out.values.data(), graph.num_qubits()));
    return out;
}

LpDecodeOutput lp_decode(const DecoderContext &ctx, const BitVector &s, const LpDecodeOptions &options) {
    LpDecodeOutput out;
    std::size_t n = ctx.num_qubits();
    if (s.none()) {
        out.x.assign(n, 0.0);
        return out;
    }
    std::optional<std::span<const double>> weights;
    if (ctx.weights()) {
        weights = std::span<const double>(*ctx.weights());
    }
    LpModel model = build_syndrome_lp(ctx.graph(), s, weights, options.check_weight_cap);
    SimplexOptions simplex = options.simplex;
    if (options.warm_start) {
        BitVector e = ctx.any_solution(s);
        std::vector<double> point(model.num_variables(), 0.0);
        SubsetLayout layout(ctx.graph(), options.check_weight_cap, n);
        for (std::size_t i : e.support()) {
            point[i] = 1.0;
        }
        for (std::size_t j = 0; j < ctx.num_checks(); ++j) {
            point[layout.var(j, restriction_mask(ctx.graph().check_qubits[j], e))] = 1.0;
        }
        simplex.start_point = std::move(point);
    }
    RevisedSimplex fallback;
    const LpSolver &solver = options.solver ? *options.solver : fallback;
    LpSolution sol = solver.solve(model, simplex);
    out.x.assign(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(n));
    out.objective = sol.objective;
    out.integral = is_integral(out.x, simplex.integrality_tol);
    out.iterations = sol.iterations;
    return out;
}

}  // namespace lposd
