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
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lposd/css_code.h"
#include "lposd/gf2.h"

namespace lposd {

/// (n-1) x n parity-check matrix of the length-n repetition code.
BinaryMatrix repetition_code(std::size_t n);

/// Rotated surface code [[d^2, 1, d]] on a d x d grid (qubit r*d + c).
/// X-type weight-2 checks sit on the top/bottom boundaries, Z-type on
/// the left/right boundaries.
CssCode build_rotated_surface(std::size_t d);

/// Hypergraph product: H_X = [1 (x) H2 | H^T (x) 1], H_Z = [H (x) 1 | 1 (x) H2^T].
/// Qubits A x A' come first (index a*|A'| + a'), then B x B'.
CssCode build_hgp(const BinaryMatrix &h, const BinaryMatrix &h2);

/// Monomial x^a y^b of the group algebra F2[Z_l x Z_m].
struct Monomial {
    std::size_t x_power = 0;
    std::size_t y_power = 0;
};

/// l*m x l*m matrix of a sum of monomials, x = S_l (x) I_m and y = I_l (x) S_m.
BinaryMatrix bb_polynomial_matrix(std::size_t l, std::size_t m, const std::vector<Monomial> &terms);

/// Bivariate bicycle code H_X = [h | h'], H_Z = [h'^T | h^T].
CssCode build_bb(std::size_t l, std::size_t m, const std::vector<Monomial> &h_terms, const std::vector<Monomial> &h2_terms);

struct BbPreset {
    std::string name;
    std::size_t l;
    std::size_t m;
    std::vector<Monomial> h_terms;
    std::vector<Monomial> h2_terms;
    std::size_t n;
    std::size_t k;
    std::size_t d;
};

const std::vector<BbPreset> &bb_presets();
/// Builds a named preset such as "72,12,6" and refuses a mismatch in (n, k).
CssCode build_bb_preset(const std::string &name);

/// Postselection distance bound d(s) for the random HGP ensemble.
std::size_t random_hgp_distance_bound(std::size_t s);

/// Uniform pairing of half-edges conditioned on a simple, connected result:
/// a 3s x 4s parity-check matrix with column weight 3 and row weight 4.
BinaryMatrix sample_biregular_34(std::size_t s, std::uint64_t seed, std::size_t max_attempts);

/// HGP of a postselected (3,4)-biregular code with itself; throws
/// SamplingExhausted after `max_attempts` rejected graphs.
CssCode sample_random_hgp(std::size_t s, std::uint64_t seed, std::size_t max_attempts = 100000);

struct ClassicalDistance {
    bool above_cap = true;  ///< Also true for the trivial code {0}.
    std::size_t value = 0;  ///< Valid when !above_cap.
};

/// Exact minimum weight of a nonzero vector of ker H, by enumerating the
/// kernel. Throws EnumerationTooLarge if dim ker H > max_kernel_dim.
ClassicalDistance classical_distance(const BinaryMatrix &h, std::size_t cap, std::size_t max_kernel_dim = 24);
ClassicalDistance classical_distance_serial(const BinaryMatrix &h, std::size_t cap, std::size_t max_kernel_dim = 24);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Edge distance in G_X from each qubit to the nearest flipped X check.
/// Qubits adjacent to a flipped check get 1; unreachable ones kUnreachable.
std::vector<std::size_t> bfs_distance_to_flipped(const TannerGraph &x_graph, const BitVector &syndrome);
std::vector<std::size_t> bfs_distance_to_flipped(const CssCode &code, const BitVector &syndrome);

/// Alternating cycle in G_Z: qubits[k] is shared by checks[k] and checks[(k+1) % K].
struct ZCycle {
    std::vector<std::size_t> checks;
    std::vector<std::size_t> qubits;
    std::size_t length() const { return 2 * checks.size(); }
};

/// A shortest cycle of G_Z with at most max_len edges, if any.
std::optional<ZCycle> find_short_z_cycle(const CssCode &code, std::size_t max_len);

}  // namespace lposd
