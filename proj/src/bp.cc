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


#include "lposd/bp.h"

#include <algorithm>
#include <cmath>

#include "lposd/errors.h"

namespace lposd {

double min_sum_scale(std::size_t t) { return 1.0 - std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(t, 1000))); }

BpResult min_sum_bp(const TannerGraph &graph, const BitVector &s, const BpConfig &cfg, std::span<const double> priors) {
    std::size_t n = graph.num_qubits();
    std::size_t m = graph.num_checks();
    if (s.size() != m) {
        throw InvalidParameter("syndrome length does not match the number of checks");
    }
    if (!priors.empty() && priors.size() != n) {
        throw InvalidParameter("prior vector length does not match the number of qubits");
    }
    if (priors.empty() && !(cfg.p > 0.0 && cfg.p < 0.5)) {
        throw InvalidParameter("BP channel probability must lie in (0, 1/2)");
    }
    std::size_t max_iter = cfg.max_iterations == 0 ? n : cfg.max_iterations;
    if (max_iter == 0) {
        max_iter = 1;
    }

    std::vector<double> prior(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p = priors.empty() ? cfg.p : priors[i];
        prior[i] = std::clamp(std::log((1.0 - p) / p), -kBpClamp, kBpClamp);
    }

    // Edge e of check j at position k: offset[j] + k. Each qubit keeps the
    // list of its edge ids.
    std::vector<std::size_t> offset(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) {
        offset[j + 1] = offset[j] + graph.check_qubits[j].size();
    }
    std::size_t num_edges = offset[m];
    std::vector<std::size_t> edge_qubit(num_edges);
    std::vector<std::vector<std::size_t>> qubit_edges(n);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < graph.check_qubits[j].size(); ++k) {
            std::size_t i = graph.check_qubits[j][k];
            edge_qubit[offset[j] + k] = i;
            qubit_edges[i].push_back(offset[j] + k);
        }
    }

    std::vector<double> v2c(num_edges);
    std::vector<double> c2v(num_edges, 0.0);
    for (std::size_t e = 0; e < num_edges; ++e) {
        v2c[e] = prior[edge_qubit[e]];
    }

    BpResult res;
    res.hard = BitVector(n);
    res.soft.assign(n, 0.0);
    std::vector<double> total(n);
    for (std::size_t t = 1; t <= max_iter; ++t) {
        double alpha = min_sum_scale(t);
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t begin = offset[j];
            std::size_t end = offset[j + 1];
            bool sign = s.get(j);
            double min1 = kBpClamp * 2;
            double min2 = kBpClamp * 2;
            std::size_t arg = begin;
            for (std::size_t e = begin; e < end; ++e) {
                double a = std::fabs(v2c[e]);
                sign ^= v2c[e] < 0;
                if (a < min1) {
                    min2 = min1;
                    min1 = a;
                    arg = e;
                } else if (a < min2) {
                    min2 = a;
                }
            }
            for (std::size_t e = begin; e < end; ++e) {
                bool sgn = sign ^ (v2c[e] < 0);
                double mag = alpha * (e == arg ? min2 : min1);
                c2v[e] = std::clamp(sgn ? -mag : mag, -kBpClamp, kBpClamp);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            double sum = prior[i];
            for (std::size_t e : qubit_edges[i]) {
                sum += c2v[e];
            }
            total[i] = sum;
            for (std::size_t e : qubit_edges[i]) {
                v2c[e] = std::clamp(sum - c2v[e], -kBpClamp, kBpClamp);
            }
        }
        BitVector hard(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (total[i] < 0) {
                hard.set(i);
            }
        }
        res.hard = std::move(hard);
        res.iterations = t;
        bool ok = true;
        for (std::size_t j = 0; j < m && ok; ++j) {
            bool parity = false;
            for (std::size_t i : graph.check_qubits[j]) {
                parity ^= res.hard.get(i);
            }
            ok = parity == s.get(j);
        }
        if (ok) {
            res.converged = true;
            break;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        res.soft[i] = 1.0 / (1.0 + std::exp(total[i]));
    }
    return res;
}

BpResult min_sum_bp(const CssCode &code, const BitVector &s, const BpConfig &cfg) {
    return min_sum_bp(code.x_graph(), s, cfg);
}

namespace {

std::span<const double> priors_of(const DecoderContext &ctx, std::vector<double> &storage) {
    if (!ctx.weights()) {
        return {};
    }
    storage.clear();
    for (double w : *ctx.weights()) {
        storage.push_back(1.0 / (1.0 + std::exp(w)));
    }
    return storage;
}

}  // namespace

DecodeResult bp_decode(const DecoderContext &ctx, const BitVector &s, const BpConfig &bp_cfg) {
    std::vector<double> storage;
    BpResult bp = min_sum_bp(ctx.graph(), s, bp_cfg, priors_of(ctx, storage));
    DecodeResult res;
    res.correction = std::move(bp.hard);
    res.stage = DecodeStage::kBp;
    res.bp_converged = bp.converged;
    res.bp_iterations = bp.iterations;
    return res;
}

DecodeResult bp_osd_decode(const DecoderContext &ctx, const BitVector &s, const BpConfig &bp_cfg,
                           const OsdConfig &osd_cfg) {
    std::vector<double> storage;
    BpResult bp = min_sum_bp(ctx.graph(), s, bp_cfg, priors_of(ctx, storage));
    DecodeResult res;
    res.bp_converged = bp.converged;
    res.bp_iterations = bp.iterations;
    if (bp.converged) {
        res.correction = std::move(bp.hard);
        res.stage = DecodeStage::kBp;
        return res;
    }
    res.correction = osd_from_soft(ctx, s, bp.soft, osd_cfg);
    res.stage = osd_cfg.order == OsdOrder::kOsdCs ? DecodeStage::kOsdCs : DecodeStage::kOsd0;
    return res;
}

DecodeResult bp_osd_decode(const CssCode &code, const BitVector &s, const BpConfig &bp_cfg, const OsdConfig &osd_cfg) {
    return bp_osd_decode(DecoderContext(code), s, bp_cfg, osd_cfg);
}

}  // namespace lposd
