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


#include "lposd/sim.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>

#include <omp.h>

#include "json.hpp"
#include "lposd/codes.h"
#include "lposd/errors.h"

namespace lposd {

bool DecoderSpec::uses_lp() const {
    return kind == DecoderKind::kLpRound || kind == DecoderKind::kLpOsd0 || kind == DecoderKind::kLpOsdCs;
}

bool DecoderSpec::uses_bp() const { return !uses_lp(); }

std::string DecoderSpec::name() const {
    switch (kind) {
        case DecoderKind::kLpRound:
            return "lp-round";
        case DecoderKind::kLpOsd0:
            return "lp-osd0";
        case DecoderKind::kLpOsdCs:
            return "lp-osdcs";
        case DecoderKind::kBp:
            return "bp";
        case DecoderKind::kBpOsd0:
            return "bp-osd0";
        case DecoderKind::kBpOsdCs:
            return "bp-osdcs";
    }
    return "unknown";
}

DecoderSpec parse_decoder(const std::string &text) {
    std::string key;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    static const std::map<std::string, DecoderKind> kinds = {
        {"lpround", DecoderKind::kLpRound}, {"lp", DecoderKind::kLpRound},       {"lposd0", DecoderKind::kLpOsd0},
        {"lposdcs", DecoderKind::kLpOsdCs}, {"bp", DecoderKind::kBp},            {"bposd0", DecoderKind::kBpOsd0},
        {"bposdcs", DecoderKind::kBpOsdCs},
    };
    auto it = kinds.find(key);
    if (it == kinds.end()) {
        throw InvalidParameter("unknown decoder '" + text + "'");
    }
    DecoderSpec spec;
    spec.kind = it->second;
    spec.osd.order = (spec.kind == DecoderKind::kLpOsd0 || spec.kind == DecoderKind::kBpOsd0) ? OsdOrder::kOsd0
                                                                                              : OsdOrder::kOsdCs;
    if (spec.uses_bp()) {
        spec.osd.tie_break = TieBreak::kRandom;
    }
    return spec;
}

DecodeResult decode(const DecoderContext &ctx, const DecoderSpec &spec, const BitVector &s) {
    switch (spec.kind) {
        case DecoderKind::kLpRound:
            return lp_round_decode(ctx, s, spec.lp);
        case DecoderKind::kLpOsd0:
        case DecoderKind::kLpOsdCs:
            return lp_osd_decode(ctx, s, spec.osd, spec.lp);
        case DecoderKind::kBp:
            return bp_decode(ctx, s, spec.bp);
        case DecoderKind::kBpOsd0:
        case DecoderKind::kBpOsdCs:
            return bp_osd_decode(ctx, s, spec.bp, spec.osd);
    }
    throw InvalidParameter("unknown decoder kind");
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t point, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(point), static_cast<std::uint32_t>(point >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BitVector sample_error(std::size_t n, double p, std::mt19937_64 &rng) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidParameter("error probability must lie in [0, 1]");
    }
    BitVector e(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (uniform01(rng) < p) {
            e.set(i);
        }
    }
    return e;
}

bool is_success(const RowSpace &z_stabilizers, const BitVector &e, const BitVector &e_hat) {
    if (e.size() != e_hat.size()) {
        throw InvalidParameter("error and correction lengths differ");
    }
    return z_stabilizers.contains(e ^ e_hat);
}

bool is_success(const CssCode &code, const BitVector &e, const BitVector &e_hat) {
    return is_success(RowSpace(code.hz()), e, e_hat);
}

Interval wilson_interval(std::size_t failures, std::size_t trials) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    constexpr double z = 1.959963984540054;
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(failures) / n;
    double denom = 1.0 + z * z / n;
    double center = (phat + z * z / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
    // The bounds touch 0 and 1 exactly at the extremes; rounding would leave dust.
    double low = failures == 0 ? 0.0 : std::max(0.0, center - half);
    double high = failures == trials ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::size_t wrong_syndrome = 0;
    std::size_t fractional_lp = 0;
    std::size_t solver_failures = 0;
    double seconds = 0.0;

    void merge(const Tally &o) {
        trials += o.trials;
        failures += o.failures;
        wrong_syndrome += o.wrong_syndrome;
        fractional_lp += o.fractional_lp;
        solver_failures += o.solver_failures;
        seconds += o.seconds;
    }
};

struct SharedState {
    const CssCode &code;
    DecoderContext ctx;
    RowSpace stabilizers;
    std::vector<DecoderSpec> decoders;

    SharedState(const CssCode &c, const std::vector<DecoderSpec> &specs, double p)
        : code(c), ctx(c), stabilizers(c.hz()), decoders(specs) {
        for (DecoderSpec &d : decoders) {
            d.bp.p = p;
        }
    }
};

// One trial for every decoder; LP and BP solves are computed once and reused.
void run_trial(const SharedState &st, double p, std::uint64_t seed, std::uint64_t point, std::uint64_t trial,
               std::vector<Tally> &tallies) {
    std::mt19937_64 rng = trial_rng(seed, point, trial);
    BitVector e = sample_error(st.code.n(), p, rng);
    std::uint64_t tie_seed = rng();
    BitVector s = st.code.syndrome(e);

    std::optional<LpDecodeOutput> lp;
    bool lp_failed = false;
    double lp_seconds = 0.0;
    std::map<std::size_t, std::pair<BpResult, double>> bp_cache;

    for (std::size_t d = 0; d < st.decoders.size(); ++d) {
        const DecoderSpec &spec = st.decoders[d];
        Tally &t = tallies[d];
        ++t.trials;
        OsdConfig osd = spec.osd;
        osd.seed ^= tie_seed;
        DecodeResult res;
        Clock::time_point t0 = Clock::now();
        double shared_seconds = 0.0;
        if (spec.uses_lp()) {
            if (!lp && !lp_failed) {
                Clock::time_point l0 = Clock::now();
                try {
                    lp = lp_decode(st.ctx, s, spec.lp);
                } catch (const IterationLimit &) {
                    lp_failed = true;
                } catch (const Unbounded &) {
                    lp_failed = true;
                } catch (const Infeasible &) {
                    lp_failed = true;
                }
                lp_seconds = seconds_since(l0);
            }
            shared_seconds = lp_seconds;
            t0 = Clock::now();
            if (lp_failed) {
                ++t.failures;
                ++t.solver_failures;
                t.seconds += shared_seconds;
                continue;
            }
            if (!lp->integral) {
                ++t.fractional_lp;
            }
            res = spec.kind == DecoderKind::kLpRound ? lp_round_finish(*lp) : lp_osd_finish(st.ctx, s, *lp, osd);
        } else {
            std::size_t key = spec.bp.max_iterations;
            auto it = bp_cache.find(key);
            if (it == bp_cache.end()) {
                Clock::time_point b0 = Clock::now();
                BpResult bp = min_sum_bp(st.ctx.graph(), s, spec.bp);
                it = bp_cache.emplace(key, std::make_pair(std::move(bp), seconds_since(b0))).first;
            }
            shared_seconds = it->second.second;
            t0 = Clock::now();
            const BpResult &bp = it->second.first;
            res.bp_converged = bp.converged;
            res.bp_iterations = bp.iterations;
            if (bp.converged || spec.kind == DecoderKind::kBp) {
                res.correction = bp.hard;
                res.stage = DecodeStage::kBp;
            } else {
                res.correction = osd_from_soft(st.ctx, s, bp.soft, osd);
                res.stage = osd.order == OsdOrder::kOsdCs ? DecodeStage::kOsdCs : DecodeStage::kOsd0;
            }
        }
        t.seconds += shared_seconds + seconds_since(t0);
        if (!is_success(st.stabilizers, e, res.correction)) {
            ++t.failures;
            if (!(st.code.syndrome(res.correction) == s)) {
                ++t.wrong_syndrome;
            }
        }
    }
}

std::vector<PointResult> finish(const SharedState &st, double p, const std::vector<Tally> &tallies, double wall) {
    std::vector<PointResult> out;
    for (std::size_t d = 0; d < tallies.size(); ++d) {
        const Tally &t = tallies[d];
        PointResult r;
        r.decoder = st.decoders[d].name();
        r.p = p;
        r.trials = t.trials;
        r.failures = t.failures;
        r.wrong_syndrome = t.wrong_syndrome;
        r.fractional_lp = t.fractional_lp;
        r.solver_failures = t.solver_failures;
        r.p_l = t.trials ? static_cast<double>(t.failures) / static_cast<double>(t.trials) : 0.0;
        r.p_ws = t.trials ? static_cast<double>(t.wrong_syndrome) / static_cast<double>(t.trials) : 0.0;
        r.ci = wilson_interval(t.failures, t.trials);
        r.mean_decode_seconds = t.trials ? t.seconds / static_cast<double>(t.trials) : 0.0;
        r.wall_seconds = wall;
        out.push_back(std::move(r));
    }
    return out;
}

void check_point_args(double p, const PointOptions &options) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidParameter("physical error rate must lie in (0, 1)");
    }
    if (options.trials == 0) {
        throw InvalidParameter("trials must be at least 1");
    }
}

}  // namespace

std::vector<PointResult> run_point_multi(const CssCode &code, const std::vector<DecoderSpec> &decoders, double p,
                                         const PointOptions &options) {
    check_point_args(p, options);
    Clock::time_point t0 = Clock::now();
    SharedState st(code, decoders, p);
    std::vector<Tally> total(decoders.size());
    int threads = options.workers ? static_cast<int>(options.workers) : omp_get_max_threads();
    std::int64_t trials = static_cast<std::int64_t>(options.trials);
#pragma omp parallel num_threads(threads)
    {
        std::vector<Tally> local(decoders.size());
#pragma omp for schedule(dynamic, 8)
        for (std::int64_t t = 0; t < trials; ++t) {
            run_trial(st, p, options.seed, options.point_index, static_cast<std::uint64_t>(t), local);
        }
#pragma omp critical
        for (std::size_t d = 0; d < local.size(); ++d) {
            total[d].merge(local[d]);
        }
    }
    return finish(st, p, total, seconds_since(t0));
}

std::vector<PointResult> run_point_multi_serial(const CssCode &code, const std::vector<DecoderSpec> &decoders,
                                                double p, const PointOptions &options) {
    check_point_args(p, options);
    Clock::time_point t0 = Clock::now();
    SharedState st(code, decoders, p);
    std::vector<Tally> total(decoders.size());
    for (std::size_t t = 0; t < options.trials; ++t) {
        run_trial(st, p, options.seed, options.point_index, t, total);
    }
    return finish(st, p, total, seconds_since(t0));
}

PointResult run_point(const CssCode &code, const DecoderSpec &decoder, double p, const PointOptions &options) {
    return run_point_multi(code, {decoder}, p, options)[0];
}

PointResult run_point_serial(const CssCode &code, const DecoderSpec &decoder, double p, const PointOptions &options) {
    return run_point_multi_serial(code, {decoder}, p, options)[0];
}

Interval bootstrap_interval(std::span<const std::size_t> failures_per_code, std::size_t trials_per_code,
                            std::size_t resamples, std::uint64_t seed) {
    std::size_t c = failures_per_code.size();
    if (c == 0 || trials_per_code == 0 || resamples == 0) {
        return {0.0, 1.0};
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, c - 1);
    std::vector<double> stats;
    stats.reserve(resamples);
    for (std::size_t r = 0; r < resamples; ++r) {
        std::size_t fails = 0;
        for (std::size_t k = 0; k < c; ++k) {
            fails += failures_per_code[pick(rng)];
        }
        stats.push_back(static_cast<double>(fails) / static_cast<double>(c * trials_per_code));
    }
    std::sort(stats.begin(), stats.end());
    auto quantile = [&](double q) {
        std::size_t idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(resamples - 1) + 0.5));
        return stats[std::min(idx, resamples - 1)];
    };
    return {quantile(0.025), quantile(0.975)};
}

PointResult run_ensemble_on(const std::vector<CssCode> &codes, const DecoderSpec &decoder, double p,
                            const EnsembleOptions &options) {
    Clock::time_point t0 = Clock::now();
    PointResult pooled;
    pooled.decoder = decoder.name();
    pooled.p = p;
    std::vector<std::size_t> per_code;
    double seconds = 0.0;
    for (std::size_t c = 0; c < codes.size(); ++c) {
        PointOptions po;
        po.trials = options.trials_per_code;
        po.seed = options.seed;
        po.point_index = c;
        po.workers = options.workers;
        PointResult r = run_point(codes[c], decoder, p, po);
        pooled.trials += r.trials;
        pooled.failures += r.failures;
        pooled.wrong_syndrome += r.wrong_syndrome;
        pooled.fractional_lp += r.fractional_lp;
        pooled.solver_failures += r.solver_failures;
        seconds += r.mean_decode_seconds * static_cast<double>(r.trials);
        per_code.push_back(r.failures);
    }
    if (pooled.trials > 0) {
        pooled.p_l = static_cast<double>(pooled.failures) / static_cast<double>(pooled.trials);
        pooled.p_ws = static_cast<double>(pooled.wrong_syndrome) / static_cast<double>(pooled.trials);
        pooled.mean_decode_seconds = seconds / static_cast<double>(pooled.trials);
    }
    pooled.ci = bootstrap_interval(per_code, options.trials_per_code, options.bootstrap_resamples, options.seed);
    pooled.wall_seconds = seconds_since(t0);
    return pooled;
}

PointResult run_ensemble(std::size_t s, const DecoderSpec &decoder, double p, const EnsembleOptions &options) {
    if (s < 1 || s > 6) {
        throw InvalidParameter("random HGP size parameter s must lie in 1..6");
    }
    std::vector<CssCode> codes;
    std::mt19937_64 seeds(options.seed);
    for (std::size_t c = 0; c < options.n_codes; ++c) {
        codes.push_back(sample_random_hgp(s, seeds()));
    }
    return run_ensemble_on(codes, decoder, p, options);
}

namespace {

std::uint64_t binomial_capped(std::size_t n, std::size_t k, std::uint64_t cap) {
    if (k > n) {
        return 0;
    }
    long double r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (r > static_cast<long double>(cap)) {
            return cap + 1;
        }
    }
    return static_cast<std::uint64_t>(std::llround(r));
}

void check_sweep_size(std::size_t n, std::size_t max_weight) {
    std::uint64_t total = 0;
    for (std::size_t w = 0; w <= max_weight; ++w) {
        total += binomial_capped(n, w, kSweepLimit);
        if (total > kSweepLimit) {
            throw EnumerationTooLarge("exhaustive sweep over weights <= " + std::to_string(max_weight) + " on " +
                                      std::to_string(n) + " qubits exceeds " + std::to_string(kSweepLimit) +
                                      " patterns");
        }
    }
}

// Decodes every error of weight w whose smallest qubit is `first`.
void sweep_from(const DecoderContext &ctx, const CssCode &code, const RowSpace &stab, const DecoderSpec &spec,
                std::size_t w, std::size_t first, SweepRow &row) {
    std::size_t n = code.n();
    std::vector<std::size_t> idx(w);
    idx[0] = first;
    for (std::size_t k = 1; k < w; ++k) {
        idx[k] = first + k;
    }
    if (w > 0 && idx[w - 1] >= n) {
        return;
    }
    while (true) {
        BitVector e = BitVector::from_support(n, idx);
        DecodeResult res = decode(ctx, spec, code.syndrome(e));
        ++row.errors;
        if (!is_success(stab, e, res.correction)) {
            ++row.failures;
        }
        // Next combination with idx[0] fixed.
        std::size_t k = w - 1;
        while (k >= 1 && idx[k] == n - w + k) {
            --k;
        }
        if (k == 0) {
            return;
        }
        ++idx[k];
        for (std::size_t r = k + 1; r < w; ++r) {
            idx[r] = idx[r - 1] + 1;
        }
    }
}

std::vector<SweepRow> sweep(const CssCode &code, const DecoderSpec &decoder, std::size_t max_weight, bool parallel,
                            std::size_t workers) {
    check_sweep_size(code.n(), max_weight);
    DecoderContext ctx(code);
    RowSpace stab(code.hz());
    std::vector<SweepRow> rows;
    for (std::size_t w = 0; w <= max_weight && w <= code.n(); ++w) {
        SweepRow row;
        row.weight = w;
        if (w == 0) {
            DecodeResult res = decode(ctx, decoder, BitVector(code.num_x_checks()));
            row.errors = 1;
            row.failures = is_success(stab, BitVector(code.n()), res.correction) ? 0 : 1;
            rows.push_back(row);
            continue;
        }
        std::int64_t n = static_cast<std::int64_t>(code.n());
        if (parallel) {
            int threads = workers ? static_cast<int>(workers) : omp_get_max_threads();
            std::size_t errors = 0;
            std::size_t failures = 0;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) reduction(+ : errors, failures)
            for (std::int64_t first = 0; first < n; ++first) {
                SweepRow part;
                sweep_from(ctx, code, stab, decoder, w, static_cast<std::size_t>(first), part);
                errors += part.errors;
                failures += part.failures;
            }
            row.errors = errors;
            row.failures = failures;
        } else {
            for (std::int64_t first = 0; first < n; ++first) {
                sweep_from(ctx, code, stab, decoder, w, static_cast<std::size_t>(first), row);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::vector<SweepRow> exhaustive_sweep(const CssCode &code, const DecoderSpec &decoder, std::size_t max_weight,
                                       std::size_t workers) {
    return sweep(code, decoder, max_weight, true, workers);
}

std::vector<SweepRow> exhaustive_sweep_serial(const CssCode &code, const DecoderSpec &decoder, std::size_t max_weight) {
    return sweep(code, decoder, max_weight, false, 1);
}

DecodeResult detector_decode(const BinaryMatrix &h, std::span<const double> probabilities, const BitVector &s,
                             const OsdConfig &cfg) {
    if (probabilities.size() != h.cols()) {
        throw InvalidParameter("probability file has " + std::to_string(probabilities.size()) +
                               " entries for a matrix with " + std::to_string(h.cols()) + " columns");
    }
    if (s.size() != h.rows()) {
        throw InvalidParameter("syndrome has " + std::to_string(s.size()) + " entries for a matrix with " +
                               std::to_string(h.rows()) + " rows");
    }
    DecoderContext ctx(h, log_likelihood_weights(probabilities));
    return lp_osd_decode(ctx, s, cfg);
}

void write_point_record(std::ostream &out, const CssCode &code, const DecoderSpec &decoder, const PointResult &result,
                        const PointOptions &options, const RecordOptions &record) {
    nlohmann::ordered_json rec;
    rec["code"] = code.name();
    rec["n"] = code.n();
    rec["k"] = code.k();
    rec["decoder"] = result.decoder;
    if (decoder.kind != DecoderKind::kLpRound && decoder.kind != DecoderKind::kBp) {
        rec["osd"] = decoder.osd.order == OsdOrder::kOsdCs ? "cs" : "0";
        rec["lambda"] = decoder.osd.lambda;
        rec["tie_break"] = decoder.osd.tie_break == TieBreak::kDistance ? "distance" : "random";
    }
    if (decoder.uses_bp()) {
        rec["bp_max_iter"] = decoder.bp.max_iterations == 0 ? code.n() : decoder.bp.max_iterations;
    }
    rec["p"] = result.p;
    rec["seed"] = options.seed;
    rec["trials"] = result.trials;
    rec["failures"] = result.failures;
    rec["p_L"] = result.p_l;
    rec["ci_low"] = result.ci.low;
    rec["ci_high"] = result.ci.high;
    rec["wrong_syndrome"] = result.wrong_syndrome;
    rec["p_ws"] = result.p_ws;
    rec["p_ws_over_p_L"] = result.failures ? static_cast<double>(result.wrong_syndrome) / static_cast<double>(result.failures)
                                           : 0.0;
    rec["fractional_lp"] = result.fractional_lp;
    rec["solver_failures"] = result.solver_failures;
    if (record.timing) {
        rec["mean_decode_ms"] = result.mean_decode_seconds * 1e3;
        rec["wall_seconds"] = result.wall_seconds;
    }
    out << rec.dump() << "\n";
}

}  // namespace lposd
