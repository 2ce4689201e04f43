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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lposd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class ConstraintSense { kLessEqual, kEqual, kGreaterEqual };
enum class ObjectiveSense { kMinimize, kMaximize };

struct LpTerm {
    std::size_t var;
    double coef;
};

struct LpVariable {
    std::string name;
    double lower = 0.0;
    double upper = kInfinity;
    double cost = 0.0;
};

struct LpConstraint {
    std::string name;
    std::vector<LpTerm> terms;
    ConstraintSense sense = ConstraintSense::kEqual;
    double rhs = 0.0;
};

/// Auxiliary variable w_{j,S} of the decoding LPs. `mask` selects the
/// subset S of f_j by position in the sorted support of check j.
struct SubsetVar {
    std::size_t check;
    std::uint32_t mask;
    std::size_t var;
};

/// A linear program. The decoding builders additionally record which
/// variables are qubit variables x_i (indices 0..num_qubit_vars-1) and
/// which are subset variables w_{j,S}.
class LpModel {
   public:
    std::size_t add_variable(std::string name, double lower, double upper, double cost);
    std::size_t add_constraint(std::string name, std::vector<LpTerm> terms, ConstraintSense sense, double rhs);

    ObjectiveSense objective_sense() const { return objective_sense_; }
    void set_objective_sense(ObjectiveSense sense) { objective_sense_ = sense; }
    const std::vector<LpVariable> &variables() const { return variables_; }
    const std::vector<LpConstraint> &constraints() const { return constraints_; }
    std::size_t num_variables() const { return variables_.size(); }
    std::size_t num_constraints() const { return constraints_.size(); }

    double objective(std::span<const double> values) const;
    /// Largest violation over constraints and variable bounds.
    double max_violation(std::span<const double> values) const;

    std::size_t num_qubit_vars = 0;
    std::vector<SubsetVar> subsets;
    /// Sorted support f_j of every check the model was built from.
    std::vector<std::vector<std::size_t>> check_supports;
    /// Index into `subsets` of the first subset of each check.
    std::vector<std::size_t> check_subset_begin;

   private:
    ObjectiveSense objective_sense_ = ObjectiveSense::kMinimize;
    std::vector<LpVariable> variables_;
    std::vector<LpConstraint> constraints_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
    LpStatus status = LpStatus::kOptimal;
    std::vector<double> values;
    double objective = 0.0;
    std::size_t iterations = 0;
    bool integral = false;  ///< Qubit variables within the integrality tolerance.
};

struct SimplexOptions {
    std::size_t max_iterations = 200000;
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    double pivot_tol = 1e-9;
    double integrality_tol = 1e-6;
    /// Consecutive degenerate pivots before switching to Bland's rule.
    std::size_t bland_after = 50;
    std::size_t refactor_every = 100;
    /// Optional feasible point (one value per model variable). Its positive
    /// entries seed the starting basis; ignored if it is not a usable vertex.
    std::optional<std::vector<double>> start_point;
};

/// Solver interface so the decoders can run against another backend.
class LpSolver {
   public:
    virtual ~LpSolver() = default;
    virtual LpSolution solve(const LpModel &model, const SimplexOptions &options) const = 0;
};

/// Two-phase revised simplex with an explicit dense basis inverse.
/// Dantzig pricing, Bland's rule after a run of degenerate pivots.
class RevisedSimplex final : public LpSolver {
   public:
    LpSolution solve(const LpModel &model, const SimplexOptions &options) const override;
};

/// Solves with RevisedSimplex. Throws Infeasible, Unbounded or IterationLimit.
LpSolution solve_lp(const LpModel &model, const SimplexOptions &options = {});

/// True iff every qubit variable is within tol of 0 or 1.
bool is_integral(const LpModel &model, const LpSolution &sol, double tol = 1e-6);
bool is_integral(std::span<const double> qubit_values, double tol = 1e-6);

/// CPLEX-style LP text for cross-checking with external solvers.
void write_lp_format(std::ostream &out, const LpModel &model);

}  // namespace lposd
