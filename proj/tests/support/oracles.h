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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "lposd/codes.h"
#include "lposd/css_code.h"
#include "lposd/gf2.h"
#include "lposd/lp.h"

namespace lposd::testing {

/// Minimum-weight errors per syndrome by enumerating all 2^n errors.
class BruteForceDecoder {
   public:
    explicit BruteForceDecoder(const BinaryMatrix &h) : n_(h.cols()) {
        std::vector<std::uint64_t> col(n_, 0);
        for (std::size_t r = 0; r < h.rows(); ++r) {
            for (std::size_t c : h.row(r).support()) {
                col[c] |= std::uint64_t{1} << r;
            }
        }
        std::uint64_t total = std::uint64_t{1} << n_;
        std::uint64_t syn = 0;
        std::uint64_t err = 0;
        for (std::uint64_t step = 0; step < total; ++step) {
            if (step > 0) {
                std::size_t flip = static_cast<std::size_t>(std::countr_zero(step));
                err ^= std::uint64_t{1} << flip;
                syn ^= col[flip];
            }
            std::size_t w = static_cast<std::size_t>(std::popcount(err));
            auto it = best_.find(syn);
            if (it == best_.end() || w < it->second.weight) {
                best_[syn] = {w, {err}};
            } else if (w == it->second.weight) {
                it->second.errors.push_back(err);
            }
        }
    }

    static std::uint64_t key(const BitVector &s) {
        std::uint64_t k = 0;
        for (std::size_t j : s.support()) {
            k |= std::uint64_t{1} << j;
        }
        return k;
    }

    std::size_t min_weight(const BitVector &s) const { return best_.at(key(s)).weight; }

    bool is_minimum(const BitVector &s, const BitVector &e) const {
        std::uint64_t k = key(e);
        for (std::uint64_t cand : best_.at(key(s)).errors) {
            if (cand == k) {
                return true;
            }
        }
        return false;
    }

    std::vector<BitVector> minimum_errors(const BitVector &s) const {
        std::vector<BitVector> out;
        for (std::uint64_t cand : best_.at(key(s)).errors) {
            BitVector e(n_);
            for (std::size_t i = 0; i < n_; ++i) {
                if ((cand >> i) & 1u) {
                    e.set(i);
                }
            }
            out.push_back(std::move(e));
        }
        return out;
    }

   private:
    struct Entry {
        std::size_t weight;
        std::vector<std::uint64_t> errors;
    };
    std::size_t n_;
    std::map<std::uint64_t, Entry> best_;
};

/// Textbook dense two-phase tableau simplex with Bland's rule. Supports
/// variables with lower bound 0 or free, and any constraint sense.
struct TableauResult {
    enum Status { kOptimal, kInfeasible, kUnbounded } status = kOptimal;
    double objective = 0.0;
    std::vector<double> values;
};

inline TableauResult tableau_solve(const LpModel &model) {
    const double eps = 1e-9;
    std::size_t nv = model.num_variables();
    // Column layout: for each model variable a positive part, plus a
    // negative part for free variables; then slacks; then artificials.
    std::vector<std::size_t> pos(nv);
    std::vector<std::ptrdiff_t> neg(nv, -1);
    std::size_t cols = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        pos[v] = cols++;
        if (std::isinf(model.variables()[v].lower)) {
            neg[v] = static_cast<std::ptrdiff_t>(cols++);
        }
    }
    std::size_t m = model.num_constraints();
    std::vector<std::vector<double>> rows(m);
    std::vector<double> rhs(m);
    std::vector<std::ptrdiff_t> slack(m, -1);
    for (std::size_t r = 0; r < m; ++r) {
        const LpConstraint &c = model.constraints()[r];
        if (c.sense != ConstraintSense::kEqual) {
            slack[r] = static_cast<std::ptrdiff_t>(cols++);
        }
    }
    // Finite upper bounds become extra <= rows.
    std::vector<std::size_t> bounded;
    for (std::size_t v = 0; v < nv; ++v) {
        if (!std::isinf(model.variables()[v].upper)) {
            bounded.push_back(v);
        }
    }
    std::size_t total_rows = m + bounded.size();
    std::vector<std::size_t> bound_slack;
    for (std::size_t k = 0; k < bounded.size(); ++k) {
        bound_slack.push_back(cols++);
    }
    std::size_t art0 = cols;
    cols += total_rows;
    std::vector<std::vector<double>> t(total_rows, std::vector<double>(cols + 1, 0.0));
    for (std::size_t r = 0; r < m; ++r) {
        const LpConstraint &c = model.constraints()[r];
        for (const LpTerm &term : c.terms) {
            t[r][pos[term.var]] += term.coef;
            if (neg[term.var] >= 0) {
                t[r][static_cast<std::size_t>(neg[term.var])] -= term.coef;
            }
        }
        if (slack[r] >= 0) {
            t[r][static_cast<std::size_t>(slack[r])] = c.sense == ConstraintSense::kLessEqual ? 1.0 : -1.0;
        }
        t[r][cols] = c.rhs;
    }
    for (std::size_t k = 0; k < bounded.size(); ++k) {
        std::size_t r = m + k;
        t[r][pos[bounded[k]]] = 1.0;
        t[r][bound_slack[k]] = 1.0;
        t[r][cols] = model.variables()[bounded[k]].upper;
    }
    for (std::size_t r = 0; r < total_rows; ++r) {
        if (t[r][cols] < 0) {
            for (double &v : t[r]) {
                v = -v;
            }
        }
        t[r][art0 + r] = 1.0;
    }
    std::vector<std::size_t> basis(total_rows);
    for (std::size_t r = 0; r < total_rows; ++r) {
        basis[r] = art0 + r;
    }
    auto pivot = [&](std::size_t pr, std::size_t pc) {
        double pv = t[pr][pc];
        for (double &v : t[pr]) {
            v /= pv;
        }
        for (std::size_t r = 0; r < total_rows; ++r) {
            if (r != pr && std::fabs(t[r][pc]) > 0) {
                double f = t[r][pc];
                for (std::size_t c = 0; c <= cols; ++c) {
                    t[r][c] -= f * t[pr][c];
                }
            }
        }
        basis[pr] = pc;
    };
    // Runs Bland's rule on cost vector `cost` over columns [0, limit).
    auto run = [&](const std::vector<double> &cost, std::size_t limit) -> bool {
        while (true) {
            std::ptrdiff_t enter = -1;
            for (std::size_t c = 0; c < limit; ++c) {
                double d = cost[c];
                for (std::size_t r = 0; r < total_rows; ++r) {
                    d -= cost[basis[r]] * t[r][c];
                }
                if (d < -eps) {
                    enter = static_cast<std::ptrdiff_t>(c);
                    break;
                }
            }
            if (enter < 0) {
                return true;
            }
            std::size_t pc = static_cast<std::size_t>(enter);
            std::ptrdiff_t leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < total_rows; ++r) {
                if (t[r][pc] > eps) {
                    double ratio = t[r][cols] / t[r][pc];
                    if (ratio < best - eps || (ratio < best + eps && leave >= 0 && basis[r] < basis[static_cast<std::size_t>(leave)])) {
                        best = ratio;
                        leave = static_cast<std::ptrdiff_t>(r);
                    }
                }
            }
            if (leave < 0) {
                return false;
            }
            pivot(static_cast<std::size_t>(leave), pc);
        }
    };
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t c = art0; c < cols; ++c) {
        phase1[c] = 1.0;
    }
    run(phase1, cols);
    TableauResult res;
    double infeas = 0.0;
    for (std::size_t r = 0; r < total_rows; ++r) {
        if (basis[r] >= art0) {
            infeas += t[r][cols];
        }
    }
    if (infeas > 1e-7) {
        res.status = TableauResult::kInfeasible;
        return res;
    }
    // Drive remaining artificials out where possible.
    for (std::size_t r = 0; r < total_rows; ++r) {
        if (basis[r] >= art0) {
            for (std::size_t c = 0; c < art0; ++c) {
                if (std::fabs(t[r][c]) > 1e-7) {
                    pivot(r, c);
                    break;
                }
            }
        }
    }
    double sign = model.objective_sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0;
    std::vector<double> cost(cols, 0.0);
    for (std::size_t v = 0; v < nv; ++v) {
        cost[pos[v]] = sign * model.variables()[v].cost;
        if (neg[v] >= 0) {
            cost[static_cast<std::size_t>(neg[v])] = -sign * model.variables()[v].cost;
        }
    }
    if (!run(cost, art0)) {
        res.status = TableauResult::kUnbounded;
        return res;
    }
    std::vector<double> colval(cols, 0.0);
    for (std::size_t r = 0; r < total_rows; ++r) {
        colval[basis[r]] = t[r][cols];
    }
    res.values.assign(nv, 0.0);
    for (std::size_t v = 0; v < nv; ++v) {
        res.values[v] = colval[pos[v]] - (neg[v] >= 0 ? colval[static_cast<std::size_t>(neg[v])] : 0.0);
    }
    res.objective = model.objective(res.values);
    return res;
}

/// Small CSS instance for the Fig. 1(a) overlap geometry.
inline CssCode overlap_example_code() {
    // X checks span the full orthogonal complement of the two Z generators,
    // so g, g' and g+g' are the only ways to move within a coset.
    BinaryMatrix hx = BinaryMatrix::from_rows(
        10, {{0, 1}, {1, 2}, {2, 3}, {6, 7}, {7, 8}, {8, 9}, {3, 4, 6}, {0, 5, 9}});
    BinaryMatrix hz = BinaryMatrix::from_rows(10, {{0, 1, 2, 3, 4, 5}, {4, 5, 6, 7, 8, 9}});
    return CssCode(hx, hz, "overlap_example");
}

inline BitVector overlap_example_error() {
    std::vector<std::size_t> e{1, 2, 4, 7, 8};
    return BitVector::from_support(10, e);
}

/// Small CSS instance for the Fig. 1(b) four-generator cycle geometry.
inline CssCode cycle_example_code() {
    std::vector<std::vector<std::size_t>> x_checks = {{3, 4, 16}, {7, 8, 17}, {11, 12, 18}, {0, 15, 19}};
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t b = 4 * k;
        x_checks.push_back({b, b + 1});
        x_checks.push_back({b + 1, b + 2});
        x_checks.push_back({b + 2, b + 3});
    }
    BinaryMatrix hx = BinaryMatrix::from_rows(20, x_checks);
    BinaryMatrix hz = BinaryMatrix::from_rows(
        20, {{0, 1, 2, 3, 16, 19}, {4, 5, 6, 7, 16, 17}, {8, 9, 10, 11, 17, 18}, {12, 13, 14, 15, 18, 19}});
    return CssCode(hx, hz, "cycle_example");
}

/// i0 = 16 plus two private qubits of every generator.
inline BitVector cycle_example_error() {
    std::vector<std::size_t> e{16, 1, 3, 5, 7, 9, 11, 13, 15};
    return BitVector::from_support(20, e);
}

inline BitVector random_error(std::size_t n, double p, std::mt19937_64 &rng) {
    std::bernoulli_distribution b(p);
    BitVector e(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (b(rng)) {
            e.set(i);
        }
    }
    return e;
}

}  // namespace lposd::testing
