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

#include "lposd/codes.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <random>

#include <omp.h>

#include "lposd/errors.h"

namespace lposd {

BinaryMatrix repetition_code(std::size_t n) {
    if (n < 1) {
        throw InvalidParameter("repetition code needs n >= 1");
    }
    BinaryMatrix h(n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h.set(i, i);
        h.set(i, i + 1);
    }
    return h;
}

CssCode build_rotated_surface(std::size_t d) {
    if (d < 3 || d % 2 == 0) {
        throw InvalidParameter("rotated surface code needs odd d >= 3, got " + std::to_string(d));
    }
    std::vector<std::vector<std::size_t>> x_checks;
    std::vector<std::vector<std::size_t>> z_checks;
    for (std::size_t r = 0; r <= d; ++r) {
        for (std::size_t c = 0; c <= d; ++c) {
            std::vector<std::size_t> support;
            for (std::size_t dr = 0; dr < 2; ++dr) {
                for (std::size_t dc = 0; dc < 2; ++dc) {
                    if (r + dr >= 1 && r + dr <= d && c + dc >= 1 && c + dc <= d) {
                        support.push_back((r + dr - 1) * d + (c + dc - 1));
                    }
                }
            }
            bool x_type = (r + c) % 2 == 0;
            bool top_bottom = r == 0 || r == d;
            bool left_right = c == 0 || c == d;
            if (support.size() == 4) {
                (x_type ? x_checks : z_checks).push_back(std::move(support));
            } else if (support.size() == 2) {
                if (top_bottom && x_type) {
                    x_checks.push_back(std::move(support));
                } else if (left_right && !x_type) {
                    z_checks.push_back(std::move(support));
                }
            }
        }
    }
    CssCode code(BinaryMatrix::from_rows(d * d, x_checks), BinaryMatrix::from_rows(d * d, z_checks),
                 "rotated_surface_d" + std::to_string(d));
    code.declare_distance(d, true);
    return code;
}

CssCode build_hgp(const BinaryMatrix &h, const BinaryMatrix &h2) {
    if (h.cols() == 0 || h2.cols() == 0) {
        throw InvalidParameter("hypergraph product needs classical codes with at least one bit");
    }
    BinaryMatrix hx = hstack(kron(BinaryMatrix::identity(h.cols()), h2), kron(h.transpose(), BinaryMatrix::identity(h2.rows())));
    BinaryMatrix hz = hstack(kron(h, BinaryMatrix::identity(h2.cols())), kron(BinaryMatrix::identity(h.rows()), h2.transpose()));
    return CssCode(std::move(hx), std::move(hz), "hgp");
}

BinaryMatrix bb_polynomial_matrix(std::size_t l, std::size_t m, const std::vector<Monomial> &terms) {
    BinaryMatrix out(l * m, l * m);
    for (const Monomial &t : terms) {
        if (t.x_power >= l || t.y_power >= m) {
            throw InvalidParameter("monomial exponents must be reduced mod (l, m)");
        }
        // x^a y^b maps basis vector (i, j) to (i + a mod l, j + b mod m).
        for (std::size_t i = 0; i < l; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                std::size_t row = ((i + t.x_power) % l) * m + (j + t.y_power) % m;
                std::size_t col = i * m + j;
                out.row(row).flip(col);
            }
        }
    }
    return out;
}

CssCode build_bb(std::size_t l, std::size_t m, const std::vector<Monomial> &h_terms, const std::vector<Monomial> &h2_terms) {
    if (l == 0 || m == 0) {
        throw InvalidParameter("bivariate bicycle code needs l, m >= 1");
    }
    if (h_terms.empty() || h2_terms.empty()) {
        throw InvalidParameter("bivariate bicycle code needs nonempty monomial lists");
    }
    BinaryMatrix a = bb_polynomial_matrix(l, m, h_terms);
    BinaryMatrix b = bb_polynomial_matrix(l, m, h2_terms);
    return CssCode(hstack(a, b), hstack(b.transpose(), a.transpose()),
                   "bb_l" + std::to_string(l) + "_m" + std::to_string(m));
}

const std::vector<BbPreset> &bb_presets() {
    static const std::vector<BbPreset> presets = {
        {"72,12,6", 6, 6, {{3, 0}, {0, 1}, {0, 2}}, {{0, 3}, {1, 0}, {2, 0}}, 72, 12, 6},
        {"90,8,10", 15, 3, {{9, 0}, {0, 1}, {0, 2}}, {{0, 0}, {2, 0}, {7, 0}}, 90, 8, 10},
        {"108,8,10", 9, 6, {{3, 0}, {0, 1}, {0, 2}}, {{0, 3}, {1, 0}, {2, 0}}, 108, 8, 10},
        {"144,12,12", 12, 6, {{3, 0}, {0, 1}, {0, 2}}, {{0, 3}, {1, 0}, {2, 0}}, 144, 12, 12},
        {"288,12,18", 12, 12, {{3, 0}, {0, 2}, {0, 7}}, {{0, 3}, {1, 0}, {2, 0}}, 288, 12, 18},
        {"784,24,24", 28, 14, {{26, 0}, {0, 6}, {0, 8}}, {{0, 7}, {9, 0}, {20, 0}}, 784, 24, 24},
    };
    return presets;
}

CssCode build_bb_preset(const std::string &name) {
    for (const BbPreset &p : bb_presets()) {
        if (p.name != name) {
            continue;
        }
        CssCode code = build_bb(p.l, p.m, p.h_terms, p.h2_terms);
        if (code.n() != p.n || code.k() != p.k) {
            throw InvalidParameter("preset " + name + " built [[" + std::to_string(code.n()) + "," +
                                   std::to_string(code.k()) + "]] instead of the declared parameters");
        }
        code.set_name("bb_" + std::to_string(p.n) + "_" + std::to_string(p.k) + "_" + std::to_string(p.d));
        code.declare_distance(p.d, false);
        return code;
    }
    throw InvalidParameter("unknown BB preset '" + name + "'");
}

std::size_t random_hgp_distance_bound(std::size_t s) {
    static constexpr std::size_t kBounds[] = {2, 4, 6, 8, 8, 10};
    if (s < 1 || s > 6) {
        throw InvalidParameter("random HGP size parameter s must be in 1..6");
    }
    return kBounds[s - 1];
}

namespace {

// Uniform integer in [0, bound) from raw 64-bit output; avoids the
// implementation-defined std::uniform_int_distribution so that samples
// match across standard libraries.
std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound) {
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % bound;
}

bool is_connected(const BinaryMatrix &h) {
    std::size_t checks = h.rows();
    std::size_t bits = h.cols();
    std::vector<std::size_t> parent(checks + bits);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (auto [r, c] : h.positions()) {
        parent[find(r)] = find(checks + c);
    }
    std::size_t root = find(0);
    for (std::size_t v = 1; v < checks + bits; ++v) {
        if (find(v) != root) {
            return false;
        }
    }
    return true;
}

}  // namespace

BinaryMatrix sample_biregular_34(std::size_t s, std::uint64_t seed, std::size_t max_attempts) {
    if (s < 1) {
        throw InvalidParameter("s must be >= 1");
    }
    std::size_t bits = 4 * s;
    std::size_t checks = 3 * s;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> check_stubs;
    for (std::size_t b = 0; b < checks; ++b) {
        check_stubs.insert(check_stubs.end(), 4, b);
    }
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        for (std::size_t i = check_stubs.size(); i > 1; --i) {
            std::swap(check_stubs[i - 1], check_stubs[uniform_below(rng, i)]);
        }
        BinaryMatrix h(checks, bits);
        bool simple = true;
        for (std::size_t stub = 0; stub < check_stubs.size() && simple; ++stub) {
            std::size_t bit = stub / 3;
            std::size_t check = check_stubs[stub];
            if (h.get(check, bit)) {
                simple = false;
            }
            h.set(check, bit);
        }
        if (simple && is_connected(h)) {
            return h;
        }
    }
    throw SamplingExhausted("no simple connected (3,4)-biregular graph after " + std::to_string(max_attempts) + " attempts");
}

CssCode sample_random_hgp(std::size_t s, std::uint64_t seed, std::size_t max_attempts) {
    std::size_t bound = random_hgp_distance_bound(s);
    std::mt19937_64 rng(seed);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        BinaryMatrix h = sample_biregular_34(s, rng(), 1000);
        ClassicalDistance d = classical_distance_serial(h, bound);
        if (!d.above_cap && d.value < bound) {
            continue;
        }
        ClassicalDistance dt = classical_distance_serial(h.transpose(), bound);
        if (!dt.above_cap && dt.value < bound) {
            continue;
        }
        CssCode code = build_hgp(h, h);
        code.set_name("random_hgp_s" + std::to_string(s));
        code.declare_distance(bound, false);
        code.set_seed(seed);
        return code;
    }
    throw SamplingExhausted("no random HGP code with s=" + std::to_string(s) + " passed postselection after " +
                            std::to_string(max_attempts) + " attempts");
}

namespace {

// Gray-code walk over the codewords whose high coefficient bits equal
// `high`; returns the minimum nonzero weight seen (or SIZE_MAX).
std::size_t min_weight_in_block(const std::vector<BitVector> &basis, std::size_t low_bits, std::uint64_t high) {
    std::size_t n = basis.empty() ? 0 : basis.front().size();
    BitVector word(n);
    for (std::size_t b = low_bits; b < basis.size(); ++b) {
        if ((high >> (b - low_bits)) & 1u) {
            word ^= basis[b];
        }
    }
    std::size_t best = kUnreachable;
    if (high != 0) {
        best = word.weight();
    }
    std::uint64_t count = std::uint64_t{1} << low_bits;
    for (std::uint64_t i = 1; i < count; ++i) {
        word ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        best = std::min(best, word.weight());
    }
    return best;
}

ClassicalDistance finish_distance(std::size_t best, std::size_t cap) {
    if (best == kUnreachable || best > cap) {
        return {true, 0};
    }
    return {false, best};
}

}  // namespace

ClassicalDistance classical_distance_serial(const BinaryMatrix &h, std::size_t cap, std::size_t max_kernel_dim) {
    std::vector<BitVector> basis = kernel_basis(h);
    if (basis.size() > max_kernel_dim) {
        throw EnumerationTooLarge("kernel dimension " + std::to_string(basis.size()) + " exceeds " + std::to_string(max_kernel_dim));
    }
    if (basis.empty()) {
        return {true, 0};
    }
    return finish_distance(min_weight_in_block(basis, basis.size(), 0), cap);
}

ClassicalDistance classical_distance(const BinaryMatrix &h, std::size_t cap, std::size_t max_kernel_dim) {
    std::vector<BitVector> basis = kernel_basis(h);
    if (basis.size() > max_kernel_dim) {
        throw EnumerationTooLarge("kernel dimension " + std::to_string(basis.size()) + " exceeds " + std::to_string(max_kernel_dim));
    }
    if (basis.empty()) {
        return {true, 0};
    }
    std::size_t high_bits = basis.size() > 12 ? std::min<std::size_t>(8, basis.size() - 12) : 0;
    std::size_t low_bits = basis.size() - high_bits;
    auto blocks = static_cast<std::int64_t>(std::uint64_t{1} << high_bits);
    std::size_t best = kUnreachable;
#pragma omp parallel for reduction(min : best) schedule(dynamic)
    for (std::int64_t high = 0; high < blocks; ++high) {
        best = std::min(best, min_weight_in_block(basis, low_bits, static_cast<std::uint64_t>(high)));
    }
    return finish_distance(best, cap);
}

std::vector<std::size_t> bfs_distance_to_flipped(const TannerGraph &x_graph, const BitVector &syndrome) {
    if (syndrome.size() != x_graph.num_checks()) {
        throw InvalidParameter("syndrome length does not match the number of X checks");
    }
    std::size_t n = x_graph.num_qubits();
    std::vector<std::size_t> dist(n, kUnreachable);
    std::vector<char> check_seen(x_graph.num_checks(), 0);
    std::deque<std::size_t> frontier;
    for (std::size_t j : syndrome.support()) {
        check_seen[j] = 1;
        for (std::size_t i : x_graph.check_qubits[j]) {
            if (dist[i] == kUnreachable) {
                dist[i] = 1;
                frontier.push_back(i);
            }
        }
    }
    while (!frontier.empty()) {
        std::size_t i = frontier.front();
        frontier.pop_front();
        for (std::size_t j : x_graph.qubit_checks[i]) {
            if (check_seen[j]) {
                continue;
            }
            check_seen[j] = 1;
            for (std::size_t q : x_graph.check_qubits[j]) {
                if (dist[q] == kUnreachable) {
                    dist[q] = dist[i] + 2;
                    frontier.push_back(q);
                }
            }
        }
    }
    return dist;
}

std::vector<std::size_t> bfs_distance_to_flipped(const CssCode &code, const BitVector &syndrome) {
    return bfs_distance_to_flipped(code.x_graph(), syndrome);
}

std::optional<ZCycle> find_short_z_cycle(const CssCode &code, std::size_t max_len) {
    const TannerGraph &g = code.z_graph();
    std::size_t m = g.num_checks();
    std::size_t total = m + g.num_qubits();
    auto neighbors = [&](std::size_t v) -> const std::vector<std::size_t> & {
        return v < m ? g.check_qubits[v] : g.qubit_checks[v - m];
    };

    std::size_t best_len = max_len + 1;
    std::vector<std::size_t> best_cycle;
    std::vector<std::size_t> dist(total);
    std::vector<std::size_t> parent(total);
    std::vector<std::size_t> touched;
    for (std::size_t root = 0; root < m; ++root) {
        std::fill(dist.begin(), dist.end(), kUnreachable);
        dist[root] = 0;
        parent[root] = kUnreachable;
        std::deque<std::size_t> queue{root};
        bool done = false;
        while (!queue.empty() && !done) {
            std::size_t u = queue.front();
            queue.pop_front();
            if (2 * dist[u] + 2 >= best_len) {
                break;
            }
            for (std::size_t raw : neighbors(u)) {
                std::size_t w = u < m ? m + raw : raw;
                if (w == parent[u]) {
                    continue;
                }
                if (dist[w] == kUnreachable) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                    continue;
                }
                std::size_t len = dist[u] + dist[w] + 1;
                if (len >= best_len) {
                    continue;
                }
                std::vector<std::size_t> left;
                for (std::size_t v = u; v != kUnreachable; v = parent[v]) {
                    left.push_back(v);
                }
                std::vector<std::size_t> right;
                for (std::size_t v = w; v != kUnreachable; v = parent[v]) {
                    right.push_back(v);
                }
                // left = u..root, right = w..root; cycle root..u, w..(before root).
                std::vector<std::size_t> cycle(left.rbegin(), left.rend());
                cycle.insert(cycle.end(), right.begin(), right.end() - 1);
                std::vector<std::size_t> sorted = cycle;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                    continue;
                }
                best_len = len;
                best_cycle = std::move(cycle);
                done = true;
                break;
            }
        }
    }
    if (best_cycle.empty()) {
        return std::nullopt;
    }
    ZCycle out;
    for (std::size_t idx = 0; idx < best_cycle.size(); ++idx) {
        if (idx % 2 == 0) {
            out.checks.push_back(best_cycle[idx]);
        } else {
            out.qubits.push_back(best_cycle[idx] - m);
        }
    }
    return out;
}

}  // namespace lposd
