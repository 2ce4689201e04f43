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

#include "lposd/lp.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lposd/errors.h"

namespace lposd {

std::size_t LpModel::add_variable(std::string name, double lower, double upper, double cost) {
    if (lower > upper) {
        throw InvalidParameter("variable " + name + " has lower bound above upper bound");
    }
    variables_.push_back({std::move(name), lower, upper, cost});
    return variables_.size() - 1;
}

std::size_t LpModel::add_constraint(std::string name, std::vector<LpTerm> terms, ConstraintSense sense, double rhs) {
    for (const LpTerm &t : terms) {
        if (t.var >= variables_.size()) {
            throw InvalidParameter("constraint " + name + " references an unknown variable");
        }
    }
    constraints_.push_back({std::move(name), std::move(terms), sense, rhs});
    return constraints_.size() - 1;
}

double LpModel::objective(std::span<const double> values) const {
    double total = 0.0;
    for (std::size_t v = 0; v < variables_.size(); ++v) {
        total += variables_[v].cost * values[v];
    }
    return total;
}

double LpModel::max_violation(std::span<const double> values) const {
    double worst = 0.0;
    for (std::size_t v = 0; v < variables_.size(); ++v) {
        worst = std::max(worst, variables_[v].lower - values[v]);
        worst = std::max(worst, values[v] - variables_[v].upper);
    }
    for (const LpConstraint &c : constraints_) {
        double activity = 0.0;
        for (const LpTerm &t : c.terms) {
            activity += t.coef * values[t.var];
        }
        switch (c.sense) {
            case ConstraintSense::kLessEqual:
                worst = std::max(worst, activity - c.rhs);
                break;
            case ConstraintSense::kGreaterEqual:
                worst = std::max(worst, c.rhs - activity);
                break;
            case ConstraintSense::kEqual:
                worst = std::max(worst, std::abs(activity - c.rhs));
                break;
        }
    }
    return worst;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// min cost^T x  s.t.  A x = b, x >= 0, b >= 0, with A stored by column.
struct StandardForm {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> col_start{0};
    std::vector<std::size_t> row_index;
    std::vector<double> value;
    std::vector<double> b;
    std::vector<double> cost;

    struct VarMap {
        std::size_t pos_col = kNone;
        std::size_t neg_col = kNone;
        double offset = 0.0;
        double sign = 1.0;
    };
    std::vector<VarMap> var_map;
    std::vector<std::size_t> row_slack;  // slack column of each row, or kNone
};

StandardForm to_standard_form(const LpModel &model) {
    StandardForm sf;
    const auto &vars = model.variables();
    const auto &cons = model.constraints();
    std::vector<std::vector<std::pair<std::size_t, double>>> columns;
    std::vector<double> cost;
    double objective_sign = model.objective_sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0;

    std::vector<std::pair<std::size_t, double>> upper_rows;  // (column, bound)
    sf.var_map.resize(vars.size());
    for (std::size_t v = 0; v < vars.size(); ++v) {
        const LpVariable &var = vars[v];
        auto &map = sf.var_map[v];
        double c = objective_sign * var.cost;
        if (std::isfinite(var.lower)) {
            map.pos_col = columns.size();
            map.offset = var.lower;
            map.sign = 1.0;
            columns.emplace_back();
            cost.push_back(c);
            if (std::isfinite(var.upper)) {
                upper_rows.emplace_back(map.pos_col, var.upper - var.lower);
            }
        } else if (std::isfinite(var.upper)) {
            map.pos_col = columns.size();
            map.offset = var.upper;
            map.sign = -1.0;
            columns.emplace_back();
            cost.push_back(-c);
        } else {
            map.pos_col = columns.size();
            map.neg_col = columns.size() + 1;
            columns.emplace_back();
            columns.emplace_back();
            cost.push_back(c);
            cost.push_back(-c);
        }
    }

    std::size_t rows = cons.size() + upper_rows.size();
    sf.b.assign(rows, 0.0);
    sf.row_slack.assign(rows, kNone);
    for (std::size_t r = 0; r < cons.size(); ++r) {
        double rhs = cons[r].rhs;
        for (const LpTerm &t : cons[r].terms) {
            const auto &map = sf.var_map[t.var];
            rhs -= t.coef * map.offset;
            columns[map.pos_col].emplace_back(r, t.coef * map.sign);
            if (map.neg_col != kNone) {
                columns[map.neg_col].emplace_back(r, -t.coef);
            }
        }
        if (cons[r].sense != ConstraintSense::kEqual) {
            sf.row_slack[r] = columns.size();
            columns.push_back({{r, cons[r].sense == ConstraintSense::kLessEqual ? 1.0 : -1.0}});
            cost.push_back(0.0);
        }
        sf.b[r] = rhs;
    }
    for (std::size_t u = 0; u < upper_rows.size(); ++u) {
        std::size_t r = cons.size() + u;
        columns[upper_rows[u].first].emplace_back(r, 1.0);
        sf.row_slack[r] = columns.size();
        columns.push_back({{r, 1.0}});
        cost.push_back(0.0);
        sf.b[r] = upper_rows[u].second;
    }

    std::vector<double> row_sign(rows, 1.0);
    for (std::size_t r = 0; r < rows; ++r) {
        if (sf.b[r] < 0) {
            row_sign[r] = -1.0;
            sf.b[r] = -sf.b[r];
        }
    }
    sf.rows = rows;
    sf.cols = columns.size();
    for (auto &col : columns) {
        for (auto [r, a] : col) {
            if (a != 0.0) {
                sf.row_index.push_back(r);
                sf.value.push_back(a * row_sign[r]);
            }
        }
        sf.col_start.push_back(sf.row_index.size());
    }
    sf.cost = std::move(cost);
    return sf;
}

class SimplexEngine {
   public:
    SimplexEngine(const StandardForm &sf, const SimplexOptions &opt)
        : sf_(sf), opt_(opt), m_(sf.rows), n_(sf.cols), barred_(sf.cols + sf.rows, 0) {}

    // Returns the standard-form primal values.
    std::vector<double> run(std::size_t &iterations) {
        bool warm = opt_.start_point && try_warm_start(*opt_.start_point);
        if (!warm) {
            cold_start();
            phase_ = 1;
            optimize();
            double infeasibility = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (is_artificial(head_[i])) {
                    infeasibility += std::max(0.0, xb_[i]);
                }
            }
            double scale = 1.0;
            for (double v : sf_.b) {
                scale = std::max(scale, std::abs(v));
            }
            if (infeasibility > 1e-7 * scale) {
                throw Infeasible("linear program is infeasible (phase-one residual " + std::to_string(infeasibility) + ")");
            }
        }
        phase_ = 2;
        for (std::size_t j = n_; j < n_ + m_; ++j) {
            barred_[j] = 1;
        }
        optimize();
        iterations = iterations_;
        std::vector<double> x(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (!is_artificial(head_[i])) {
                x[head_[i]] = std::max(0.0, xb_[i]);
            }
        }
        return x;
    }

   private:
    bool is_artificial(std::size_t col) const { return col >= n_; }

    double cost(std::size_t col) const {
        if (phase_ == 1) {
            return is_artificial(col) ? 1.0 : 0.0;
        }
        return is_artificial(col) ? 0.0 : sf_.cost[col];
    }

    void cold_start() {
        head_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            head_[i] = n_ + i;
        }
        binv_.assign(m_ * m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            binv_[i * m_ + i] = 1.0;
        }
        xb_ = sf_.b;
    }

    std::vector<double> standard_values(const std::vector<double> &point) const {
        std::vector<double> x(n_, 0.0);
        for (std::size_t v = 0; v < sf_.var_map.size(); ++v) {
            const auto &map = sf_.var_map[v];
            double shifted = map.sign * (point[v] - map.offset);
            if (map.neg_col == kNone) {
                x[map.pos_col] = shifted;
            } else if (shifted >= 0) {
                x[map.pos_col] = shifted;
            } else {
                x[map.neg_col] = -shifted;
            }
        }
        std::vector<double> activity(m_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            if (x[j] == 0.0) {
                continue;
            }
            for (std::size_t k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
                activity[sf_.row_index[k]] += sf_.value[k] * x[j];
            }
        }
        for (std::size_t r = 0; r < m_; ++r) {
            std::size_t s = sf_.row_slack[r];
            if (s == kNone) {
                continue;
            }
            double a = sf_.value[sf_.col_start[s]];
            x[s] = (sf_.b[r] - activity[r]) / a;
        }
        return x;
    }

    bool try_warm_start(const std::vector<double> &point) {
        if (point.size() != sf_.var_map.size()) {
            return false;
        }
        std::vector<double> x = standard_values(point);
        std::vector<std::size_t> candidates;
        for (std::size_t j = 0; j < n_; ++j) {
            if (x[j] < -opt_.feasibility_tol) {
                return false;
            }
            if (x[j] > opt_.feasibility_tol) {
                candidates.push_back(j);
            }
        }
        if (candidates.size() > m_) {
            return false;
        }
        // Find rows that the candidate columns can pivot on; the rest get artificials.
        std::vector<double> dense(m_ * candidates.size(), 0.0);
        std::size_t w = candidates.size();
        for (std::size_t c = 0; c < w; ++c) {
            std::size_t j = candidates[c];
            for (std::size_t k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
                dense[sf_.row_index[k] * w + c] += sf_.value[k];
            }
        }
        std::vector<char> row_used(m_, 0);
        for (std::size_t c = 0; c < w; ++c) {
            std::size_t best = kNone;
            double best_abs = opt_.pivot_tol;
            for (std::size_t r = 0; r < m_; ++r) {
                if (!row_used[r] && std::abs(dense[r * w + c]) > best_abs) {
                    best_abs = std::abs(dense[r * w + c]);
                    best = r;
                }
            }
            if (best == kNone) {
                return false;
            }
            row_used[best] = 1;
            for (std::size_t r = 0; r < m_; ++r) {
                double f = dense[r * w + c];
                if (r == best || f == 0.0) {
                    continue;
                }
                f /= dense[best * w + c];
                for (std::size_t cc = c; cc < w; ++cc) {
                    dense[r * w + cc] -= f * dense[best * w + cc];
                }
            }
        }
        head_ = candidates;
        for (std::size_t r = 0; r < m_; ++r) {
            if (!row_used[r]) {
                head_.push_back(n_ + r);
            }
        }
        if (!refactor()) {
            return false;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            double tol = 1e-7 * std::max(1.0, std::abs(is_artificial(head_[i]) ? 0.0 : x[head_[i]]));
            if (is_artificial(head_[i]) ? std::abs(xb_[i]) > tol : xb_[i] < -tol) {
                return false;
            }
        }
        return true;
    }

    // Rebuilds binv_ and xb_ from head_. Returns false if the basis is singular.
    bool refactor() {
        std::vector<double> mat(m_ * m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            std::size_t j = head_[i];
            if (is_artificial(j)) {
                mat[(j - n_) * m_ + i] = 1.0;
                continue;
            }
            for (std::size_t k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
                mat[sf_.row_index[k] * m_ + i] += sf_.value[k];
            }
        }
        std::vector<double> inv(m_ * m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            inv[i * m_ + i] = 1.0;
        }
        // Gauss-Jordan on [mat | inv]; row r of the result pairs with basis position r.
        for (std::size_t c = 0; c < m_; ++c) {
            std::size_t p = kNone;
            double best = 1e-11;
            for (std::size_t r = c; r < m_; ++r) {
                if (std::abs(mat[r * m_ + c]) > best) {
                    best = std::abs(mat[r * m_ + c]);
                    p = r;
                }
            }
            if (p == kNone) {
                return false;
            }
            if (p != c) {
                std::swap_ranges(mat.begin() + p * m_, mat.begin() + (p + 1) * m_, mat.begin() + c * m_);
                std::swap_ranges(inv.begin() + p * m_, inv.begin() + (p + 1) * m_, inv.begin() + c * m_);
            }
            double piv = mat[c * m_ + c];
            for (std::size_t k = 0; k < m_; ++k) {
                mat[c * m_ + k] /= piv;
                inv[c * m_ + k] /= piv;
            }
            for (std::size_t r = 0; r < m_; ++r) {
                double f = mat[r * m_ + c];
                if (r == c || f == 0.0) {
                    continue;
                }
                for (std::size_t k = 0; k < m_; ++k) {
                    mat[r * m_ + k] -= f * mat[c * m_ + k];
                    inv[r * m_ + k] -= f * inv[c * m_ + k];
                }
            }
        }
        binv_ = std::move(inv);
        xb_.assign(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            double acc = 0.0;
            const double *row = &binv_[i * m_];
            for (std::size_t k = 0; k < m_; ++k) {
                acc += row[k] * sf_.b[k];
            }
            xb_[i] = std::abs(acc) < 1e-12 ? 0.0 : acc;
        }
        return true;
    }

    void compute_duals() {
        y_.assign(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            double c = cost(head_[i]);
            if (c == 0.0) {
                continue;
            }
            const double *row = &binv_[i * m_];
            for (std::size_t k = 0; k < m_; ++k) {
                y_[k] += c * row[k];
            }
        }
    }

    double reduced_cost(std::size_t j) const {
        if (is_artificial(j)) {
            return cost(j) - y_[j - n_];
        }
        double d = cost(j);
        for (std::size_t k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
            d -= y_[sf_.row_index[k]] * sf_.value[k];
        }
        return d;
    }

    void ftran(std::size_t j, std::vector<double> &alpha) const {
        alpha.assign(m_, 0.0);
        if (is_artificial(j)) {
            std::size_t r = j - n_;
            for (std::size_t i = 0; i < m_; ++i) {
                alpha[i] = binv_[i * m_ + r];
            }
            return;
        }
        for (std::size_t k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
            std::size_t r = sf_.row_index[k];
            double a = sf_.value[k];
            for (std::size_t i = 0; i < m_; ++i) {
                alpha[i] += binv_[i * m_ + r] * a;
            }
        }
    }

    void optimize() {
        std::vector<char> basic(n_ + m_, 0);
        for (std::size_t j : head_) {
            basic[j] = 1;
        }
        compute_duals();
        std::size_t degenerate_run = 0;
        std::size_t since_refactor = 0;
        std::vector<double> alpha;
        std::vector<std::size_t> nz;
        while (true) {
            if (iterations_ >= opt_.max_iterations) {
                throw IterationLimit("simplex exceeded " + std::to_string(opt_.max_iterations) + " iterations");
            }
            bool bland = degenerate_run >= opt_.bland_after;
            std::size_t entering = kNone;
            double best = -opt_.optimality_tol;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (basic[j] || barred_[j]) {
                    continue;
                }
                double d = reduced_cost(j);
                if (d < best) {
                    entering = j;
                    if (bland) {
                        break;
                    }
                    best = d;
                }
            }
            if (entering == kNone) {
                // Confirm optimality against freshly computed quantities.
                if (since_refactor > 0) {
                    refactor();
                    compute_duals();
                    since_refactor = 0;
                    continue;
                }
                return;
            }
            double d_q = reduced_cost(entering);
            ftran(entering, alpha);

            std::size_t leave = kNone;
            double theta = kInfinity;
            double leave_alpha = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                double a = alpha[i];
                double ratio;
                if (phase_ == 2 && is_artificial(head_[i])) {
                    if (std::abs(a) <= opt_.pivot_tol) {
                        continue;
                    }
                    ratio = 0.0;
                } else {
                    if (a <= opt_.pivot_tol) {
                        continue;
                    }
                    ratio = std::max(0.0, xb_[i]) / a;
                }
                bool take = false;
                if (leave == kNone || ratio < theta - 1e-12) {
                    take = true;
                } else if (ratio <= theta + 1e-12) {
                    take = bland ? head_[i] < head_[leave] : std::abs(a) > std::abs(leave_alpha);
                }
                if (take) {
                    leave = i;
                    theta = ratio;
                    leave_alpha = a;
                }
            }
            if (leave == kNone) {
                throw Unbounded("linear program is unbounded");
            }

            nz.clear();
            for (std::size_t i = 0; i < m_; ++i) {
                if (alpha[i] != 0.0) {
                    nz.push_back(i);
                }
            }
            for (std::size_t i : nz) {
                xb_[i] -= theta * alpha[i];
            }
            xb_[leave] = theta;
            double *pivot_row = &binv_[leave * m_];
            double inv_pivot = 1.0 / alpha[leave];
            for (std::size_t k = 0; k < m_; ++k) {
                pivot_row[k] *= inv_pivot;
            }
            for (std::size_t i : nz) {
                if (i == leave) {
                    continue;
                }
                double f = alpha[i];
                double *row = &binv_[i * m_];
                for (std::size_t k = 0; k < m_; ++k) {
                    row[k] -= f * pivot_row[k];
                }
            }
            for (std::size_t k = 0; k < m_; ++k) {
                y_[k] += d_q * pivot_row[k];
            }
            std::size_t leaving_col = head_[leave];
            basic[leaving_col] = 0;
            if (is_artificial(leaving_col)) {
                barred_[leaving_col] = 1;
            }
            basic[entering] = 1;
            head_[leave] = entering;
            ++iterations_;
            degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;
            if (++since_refactor >= opt_.refactor_every) {
                refactor();
                compute_duals();
                since_refactor = 0;
            }
        }
    }

    const StandardForm &sf_;
    const SimplexOptions &opt_;
    std::size_t m_;
    std::size_t n_;
    int phase_ = 1;
    std::size_t iterations_ = 0;
    std::vector<std::size_t> head_;
    std::vector<double> binv_;
    std::vector<double> xb_;
    std::vector<double> y_;
    std::vector<char> barred_;
};

}  // namespace

LpSolution RevisedSimplex::solve(const LpModel &model, const SimplexOptions &options) const {
    StandardForm sf = to_standard_form(model);
    SimplexEngine engine(sf, options);
    LpSolution sol;
    std::vector<double> x = engine.run(sol.iterations);
    sol.values.resize(model.num_variables());
    for (std::size_t v = 0; v < model.num_variables(); ++v) {
        const auto &map = sf.var_map[v];
        double shifted = x[map.pos_col];
        if (map.neg_col != kNone) {
            shifted -= x[map.neg_col];
        }
        sol.values[v] = map.offset + map.sign * shifted;
    }
    sol.objective = model.objective(sol.values);
    sol.status = LpStatus::kOptimal;
    sol.integral = is_integral(model, sol, options.integrality_tol);
    return sol;
}

LpSolution solve_lp(const LpModel &model, const SimplexOptions &options) {
    return RevisedSimplex().solve(model, options);
}

bool is_integral(std::span<const double> qubit_values, double tol) {
    return std::all_of(qubit_values.begin(), qubit_values.end(),
                       [tol](double v) { return std::abs(v) <= tol || std::abs(v - 1.0) <= tol; });
}

bool is_integral(const LpModel &model, const LpSolution &sol, double tol) {
    return is_integral(std::span<const double>(sol.values.data(), model.num_qubit_vars), tol);
}

namespace {

void write_linear_expr(std::ostream &out, const LpModel &model, const std::vector<LpTerm> &terms) {
    std::size_t on_line = 0;
    for (const LpTerm &t : terms) {
        if (t.coef == 0.0) {
            continue;
        }
        out << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << ' ' << model.variables()[t.var].name;
        if (++on_line % 8 == 0) {
            out << "\n   ";
        }
    }
    if (on_line == 0) {
        out << " 0 " << (model.variables().empty() ? "dummy" : model.variables().front().name);
    }
}

}  // namespace

void write_lp_format(std::ostream &out, const LpModel &model) {
    out.precision(17);
    out << (model.objective_sense() == ObjectiveSense::kMinimize ? "Minimize\n" : "Maximize\n");
    std::vector<LpTerm> objective;
    for (std::size_t v = 0; v < model.num_variables(); ++v) {
        objective.push_back({v, model.variables()[v].cost});
    }
    out << " obj:";
    write_linear_expr(out, model, objective);
    out << "\nSubject To\n";
    for (std::size_t r = 0; r < model.num_constraints(); ++r) {
        const LpConstraint &c = model.constraints()[r];
        out << ' ' << (c.name.empty() ? "c" + std::to_string(r) : c.name) << ':';
        write_linear_expr(out, model, c.terms);
        switch (c.sense) {
            case ConstraintSense::kLessEqual:
                out << " <= ";
                break;
            case ConstraintSense::kGreaterEqual:
                out << " >= ";
                break;
            case ConstraintSense::kEqual:
                out << " = ";
                break;
        }
        out << c.rhs << '\n';
    }
    out << "Bounds\n";
    for (const LpVariable &v : model.variables()) {
        bool lower_default = v.lower == 0.0;
        bool upper_default = v.upper == kInfinity;
        if (lower_default && upper_default) {
            continue;
        }
        if (v.lower == -kInfinity && v.upper == kInfinity) {
            out << ' ' << v.name << " free\n";
            continue;
        }
        out << ' ';
        if (v.lower == -kInfinity) {
            out << "-inf";
        } else {
            out << v.lower;
        }
        out << " <= " << v.name << " <= ";
        if (v.upper == kInfinity) {
            out << "+inf";
        } else {
            out << v.upper;
        }
        out << '\n';
    }
    out << "End\n";
}

}  // namespace lposd
