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
#include <optional>
#include <string>
#include <vector>

#include "lposd/gf2.h"

namespace lposd {

/// Bipartite qubit/check adjacency of one parity-check matrix.
struct TannerGraph {
    std::vector<std::vector<std::size_t>> check_qubits;  ///< f_j, sorted ascending.
    std::vector<std::vector<std::size_t>> qubit_checks;  ///< N(i), sorted ascending.

    static TannerGraph from_matrix(const BinaryMatrix &h);
    std::size_t num_checks() const { return check_qubits.size(); }
    std::size_t num_qubits() const { return qubit_checks.size(); }
    std::size_t num_edges() const;
};

struct CodeParameters {
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<std::size_t> distance;  ///< Declared or postselected bound.
    bool distance_exact = false;
};

/// CSS code given by (H_X, H_Z). Immutable after construction; the
/// constructor rejects matrices with H_X H_Z^T != 0.
class CssCode {
   public:
    CssCode() = default;
    CssCode(BinaryMatrix hx, BinaryMatrix hz, std::string name = "");

    const BinaryMatrix &hx() const { return hx_; }
    const BinaryMatrix &hz() const { return hz_; }
    const TannerGraph &x_graph() const { return x_graph_; }
    const TannerGraph &z_graph() const { return z_graph_; }
    std::size_t n() const { return hx_.cols(); }
    std::size_t num_x_checks() const { return hx_.rows(); }
    std::size_t num_z_checks() const { return hz_.rows(); }
    const std::string &name() const { return name_; }

    /// k = n - rank H_X - rank H_Z.
    std::size_t k() const { return k_; }
    CodeParameters parameters() const { return {n(), k_, distance_, distance_exact_}; }

    BitVector syndrome(const BitVector &z_error) const { return hx_.multiply(z_error); }

    void set_name(std::string name) { name_ = std::move(name); }
    void declare_distance(std::size_t d, bool exact) {
        distance_ = d;
        distance_exact_ = exact;
    }
    std::optional<std::uint64_t> seed() const { return seed_; }
    void set_seed(std::uint64_t seed) { seed_ = seed; }

   private:
    BinaryMatrix hx_;
    BinaryMatrix hz_;
    TannerGraph x_graph_;
    TannerGraph z_graph_;
    std::string name_;
    std::size_t k_ = 0;
    std::optional<std::size_t> distance_;
    bool distance_exact_ = false;
    std::optional<std::uint64_t> seed_;
};

/// Writes hx.txt, hz.txt and meta.json into `dir` (created if missing).
void save_code(const std::string &dir, const CssCode &code);
CssCode load_code(const std::string &dir);

}  // namespace lposd
