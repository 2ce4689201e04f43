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


#include "lposd/osd.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <omp.h>

#include "lposd/codes.h"
#include "lposd/errors.h"

namespace lposd {

namespace {

// Soft values are compared on a 1e-9 grid so that LP values agreeing up to
// solver noise count as ties.
long long quantize(double v) { return std::llround(v * 1e9); }

struct Elimination {
    std::vector<std::size_t> committed;
    std::vector<std::size_t> erased;
    BitVector s_reduced;                   ///< Over the rank pivot rows.
    std::vector<BitVector> erased_columns;  ///< H_S^{-1} H_t for each t in erased.
};

// Gauss-Jordan elimination of [H | s] with columns visited in permutation
// order; pivot columns form S.
Elimination eliminate(const BinaryMatrix &h, const BitVector &s, std::span<const std::size_t> permutation,
                      bool want_columns) {
    std::size_t m = h.rows();
    std::size_t n = h.cols();
    if (s.size() != m) {
        throw InvalidParameter("syndrome length does not match the number of checks");
    }
    if (permutation.size() != n) {
        throw InvalidParameter("ordering length does not match the number of qubits");
    }
    std::vector<BitVector> rows;
    rows.reserve(m);
    for (std::size_t r = 0; r < m; ++r) {
        BitVector row(n + 1);
        auto src = h.row(r).words();
        auto dst = row.words();
        std::copy(src.begin(), src.end(), dst.begin());
        row.set(n, s.get(r));
        rows.push_back(std::move(row));
    }
    Elimination out;
    std::size_t rank = 0;
    for (std::size_t c : permutation) {
        std::size_t pivot = m;
        for (std::size_t r = rank; r < m; ++r) {
            if (rows[r].get(c)) {
                pivot = r;
                break;
            }
        }
        if (pivot == m) {
            out.erased.push_back(c);
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r != rank && rows[r].get(c)) {
                rows[r] ^= rows[rank];
            }
        }
        out.committed.push_back(c);
        ++rank;
    }
    for (std::size_t r = rank; r < m; ++r) {
        if (rows[r].get(n)) {
            throw InconsistentSystem("syndrome is not in the column space of the check matrix");
        }
    }
    out.s_reduced = BitVector(rank);
    for (std::size_t r = 0; r < rank; ++r) {
        out.s_reduced.set(r, rows[r].get(n));
    }
    if (want_columns) {
        out.erased_columns.reserve(out.erased.size());
        for (std::size_t c : out.erased) {
            BitVector col(rank);
            for (std::size_t r = 0; r < rank; ++r) {
                col.set(r, rows[r].get(c));
            }
            out.erased_columns.push_back(std::move(col));
        }
    }
    return out;
}

BitVector assemble(std::size_t n, const Elimination &el, const BitVector &committed_values,
                   std::span<const std::size_t> erased_set) {
    BitVector e(n);
    for (std::size_t r : committed_values.support()) {
        e.set(el.committed[r]);
    }
    for (std::size_t t : erased_set) {
        e.set(el.erased[t]);
    }
    return e;
}

BitVector osd0_from(std::size_t n, const Elimination &el) { return assemble(n, el, el.s_reduced, {}); }

std::size_t xor_weight(const BitVector &a, const BitVector &b) {
    auto wa = a.words();
    auto wb = b.words();
    std::size_t w = 0;
    for (std::size_t k = 0; k < wa.size(); ++k) {
        w += static_cast<std::size_t>(std::popcount(wa[k] ^ wb[k]));
    }
    return w;
}

std::size_t xor3_weight(const BitVector &a, const BitVector &b, const BitVector &c) {
    auto wa = a.words();
    auto wb = b.words();
    auto wc = c.words();
    std::size_t w = 0;
    for (std::size_t k = 0; k < wa.size(); ++k) {
        w += static_cast<std::size_t>(std::popcount(wa[k] ^ wb[k] ^ wc[k]));
    }
    return w;
}

// Candidate enumeration: index 0 is OSD-0, 1..|T| flip one erased bit,
// then pairs (a, b), a < b < L, in lexicographic order.
struct CandidateSpace {
    std::size_t num_erased;
    std::size_t limit;

    std::size_t size() const { return 1 + num_erased + limit * (limit - (limit > 0 ? 1 : 0)) / 2; }

    std::pair<std::size_t, std::size_t> pair_at(std::size_t k) const {
        // k-th pair in lexicographic order over a < b < limit.
        std::size_t a = 0;
        std::size_t row = limit - 1;
        while (k >= row) {
            k -= row;
            ++a;
            --row;
        }
        return {a, a + 1 + k};
    }
};

std::size_t candidate_weight(const Elimination &el, const CandidateSpace &space, std::size_t idx,
                             std::size_t &pair_a, std::size_t &pair_b) {
    if (idx == 0) {
        return el.s_reduced.weight();
    }
    if (idx <= space.num_erased) {
        return 1 + xor_weight(el.s_reduced, el.erased_columns[idx - 1]);
    }
    auto [a, b] = space.pair_at(idx - 1 - space.num_erased);
    pair_a = a;
    pair_b = b;
    return 2 + xor3_weight(el.s_reduced, el.erased_columns[a], el.erased_columns[b]);
}

BitVector build_candidate(std::size_t n, const Elimination &el, const CandidateSpace &space, std::size_t idx) {
    if (idx == 0) {
        return osd0_from(n, el);
    }
    if (idx <= space.num_erased) {
        std::size_t t = idx - 1;
        return assemble(n, el, el.s_reduced ^ el.erased_columns[t], std::vector<std::size_t>{t});
    }
    auto [a, b] = space.pair_at(idx - 1 - space.num_erased);
    BitVector v = el.s_reduced ^ el.erased_columns[a];
    v ^= el.erased_columns[b];
    return assemble(n, el, v, std::vector<std::size_t>{a, b});
}

CandidateSpace space_for(const Elimination &el, std::size_t lambda) {
    return {el.erased.size(), std::min(lambda, el.erased.size())};
}

BitVector osd_cs_sweep(std::size_t n, const Elimination &el, std::size_t lambda, bool parallel) {
    CandidateSpace space = space_for(el, lambda);
    std::size_t total = space.size();
    // Packed (weight, enumeration index) so that min picks the earliest of the lightest.
    std::uint64_t best = ~std::uint64_t{0};
    if (parallel && total >= 4096 && !omp_in_parallel() && omp_get_max_threads() > 1) {
#pragma omp parallel for schedule(static) reduction(min : best)
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t a = 0;
            std::size_t b = 0;
            std::uint64_t key = (static_cast<std::uint64_t>(candidate_weight(el, space, idx, a, b)) << 40) | idx;
            best = std::min(best, key);
        }
    } else {
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t a = 0;
            std::size_t b = 0;
            std::uint64_t key = (static_cast<std::uint64_t>(candidate_weight(el, space, idx, a, b)) << 40) | idx;
            best = std::min(best, key);
        }
    }
    return build_candidate(n, el, space, static_cast<std::size_t>(best & ((std::uint64_t{1} << 40) - 1)));
}

}  // namespace

std::vector<std::size_t> soft_permutation(std::span<const double> x, const TannerGraph &graph, const BitVector &s,
                                          const OsdConfig &cfg) {
    std::size_t n = graph.num_qubits();
    if (x.size() != n) {
        throw InvalidParameter("soft vector length does not match the number of qubits");
    }
    std::vector<long long> key(n);
    for (std::size_t i = 0; i < n; ++i) {
        key[i] = quantize(x[i]);
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (cfg.tie_break == TieBreak::kDistance) {
        std::vector<std::size_t> dist = bfs_distance_to_flipped(graph, s);
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            if (key[a] != key[b]) {
                return key[a] > key[b];
            }
            if (dist[a] != dist[b]) {
                return dist[a] < dist[b];
            }
            return a < b;
        });
    } else {
        std::mt19937_64 rng(cfg.seed);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
    }
    return perm;
}

QubitOrdering order_qubits(std::span<const double> x, const DecoderContext &ctx, const BitVector &s,
                           const OsdConfig &cfg) {
    QubitOrdering ord;
    ord.permutation = soft_permutation(x, ctx.graph(), s, cfg);
    Elimination el = eliminate(ctx.h(), BitVector(ctx.num_checks()), ord.permutation, false);
    ord.committed = std::move(el.committed);
    ord.erased = std::move(el.erased);
    return ord;
}

QubitOrdering order_qubits(std::span<const double> x, const CssCode &code, const BitVector &s, const OsdConfig &cfg) {
    return order_qubits(x, DecoderContext(code.hx()), s, cfg);
}

BitVector osd0(const BinaryMatrix &h, const BitVector &s, const QubitOrdering &ord) {
    Elimination el = eliminate(h, s, ord.permutation, false);
    return osd0_from(h.cols(), el);
}

BitVector osd_cs(const BinaryMatrix &h, const BitVector &s, const QubitOrdering &ord, std::size_t lambda) {
    Elimination el = eliminate(h, s, ord.permutation, true);
    return osd_cs_sweep(h.cols(), el, lambda, true);
}

BitVector osd_cs_serial(const BinaryMatrix &h, const BitVector &s, const QubitOrdering &ord, std::size_t lambda) {
    Elimination el = eliminate(h, s, ord.permutation, true);
    return osd_cs_sweep(h.cols(), el, lambda, false);
}

const char *stage_name(DecodeStage stage) {
    switch (stage) {
        case DecodeStage::kIntegralLp:
            return "integral-LP";
        case DecodeStage::kRounded:
            return "rounded";
        case DecodeStage::kOsd0:
            return "osd0";
        case DecodeStage::kOsdCs:
            return "osd-cs";
        case DecodeStage::kBp:
            return "bp";
    }
    return "unknown";
}

BitVector osd_from_soft(const DecoderContext &ctx, const BitVector &s, std::span<const double> x,
                        const OsdConfig &cfg) {
    std::vector<std::size_t> perm = soft_permutation(x, ctx.graph(), s, cfg);
    bool cs = cfg.order == OsdOrder::kOsdCs;
    Elimination el = eliminate(ctx.h(), s, perm, cs);
    return cs ? osd_cs_sweep(ctx.num_qubits(), el, cfg.lambda, true) : osd0_from(ctx.num_qubits(), el);
}

DecodeResult lp_osd_finish(const DecoderContext &ctx, const BitVector &s, const LpDecodeOutput &lp,
                           const OsdConfig &cfg) {
    DecodeResult res;
    res.lp_integral = lp.integral;
    res.lp_objective = lp.objective;
    res.lp_iterations = lp.iterations;
    if (lp.integral) {
        res.correction = round_independent(lp.x);
        res.stage = DecodeStage::kIntegralLp;
        return res;
    }
    res.correction = osd_from_soft(ctx, s, lp.x, cfg);
    res.stage = cfg.order == OsdOrder::kOsdCs ? DecodeStage::kOsdCs : DecodeStage::kOsd0;
    return res;
}

DecodeResult lp_round_finish(const LpDecodeOutput &lp) {
    DecodeResult res;
    res.lp_integral = lp.integral;
    res.lp_objective = lp.objective;
    res.lp_iterations = lp.iterations;
    res.correction = round_independent(lp.x);
    res.stage = lp.integral ? DecodeStage::kIntegralLp : DecodeStage::kRounded;
    return res;
}

DecodeResult lp_osd_decode(const DecoderContext &ctx, const BitVector &s, const OsdConfig &cfg,
                           const LpDecodeOptions &lp_options) {
    return lp_osd_finish(ctx, s, lp_decode(ctx, s, lp_options), cfg);
}

DecodeResult lp_osd_decode(const CssCode &code, const BitVector &s, const OsdConfig &cfg) {
    return lp_osd_decode(DecoderContext(code), s, cfg);
}

DecodeResult lp_round_decode(const DecoderContext &ctx, const BitVector &s, const LpDecodeOptions &lp_options) {
    return lp_round_finish(lp_decode(ctx, s, lp_options));
}

}  // namespace lposd
