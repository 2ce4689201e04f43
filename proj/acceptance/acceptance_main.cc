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


// Acceptance suite: one PASS/FAIL line per criterion on stdout.
// Usage: lposd_acceptance [criterion ...]   (default: all of 1..8)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lposd/codes.h"
#include "lposd/errors.h"
#include "lposd/lp_decoder.h"
#include "lposd/osd.h"
#include "lposd/patterns.h"
#include "lposd/sim.h"
#include "support/oracles.h"

using namespace lposd;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

std::vector<BitVector> errors_up_to_weight(std::size_t n, std::size_t w) {
    std::vector<BitVector> out{BitVector(n)};
    for (std::size_t a = 0; a < n && w >= 1; ++a) {
        out.push_back(BitVector::from_support(n, std::vector<std::size_t>{a}));
        for (std::size_t b = a + 1; b < n && w >= 2; ++b) {
            out.push_back(BitVector::from_support(n, std::vector<std::size_t>{a, b}));
        }
    }
    return out;
}

// 1. Integral LP optima coincide with brute-force minimum-weight errors.
Outcome criterion1() {
    BinaryMatrix rep = repetition_code(3);
    std::size_t syndromes = 0, integral = 0, mismatches = 0;
    for (const CssCode &code : {build_rotated_surface(3), build_hgp(rep, rep)}) {
        lposd::testing::BruteForceDecoder brute(code.hx());
        std::set<std::string> seen;
        for (const BitVector &e : errors_up_to_weight(code.n(), 2)) {
            BitVector s = code.syndrome(e);
            if (!seen.insert(s.to_string()).second) {
                continue;
            }
            ++syndromes;
            LpModel model = build_syndrome_lp(code, s);
            LpSolution sol = solve_lp(model);
            if (!is_integral(model, sol)) {
                continue;
            }
            ++integral;
            BitVector x = round_independent(std::span<const double>(sol.values.data(), code.n()));
            if (code.syndrome(x) != s || !brute.is_minimum(s, x)) {
                ++mismatches;
            }
        }
    }
    return {mismatches == 0 && integral > 0,
            fmt("%zu syndromes, %zu integral optima, %zu mismatches", syndromes, integral, mismatches)};
}

// x = 0 with every check on its empty subset.
LpSolution solve_error_lp(const CssCode &code, const BitVector &e) {
    LpModel model = build_error_lp(code, e);
    std::vector<double> point(model.num_variables(), 0.0);
    for (const SubsetVar &sv : model.subsets) {
        if (sv.mask == 0) {
            point[sv.var] = 1.0;
        }
    }
    SimplexOptions opts;
    opts.start_point = std::move(point);
    return solve_lp(model, opts);
}

// tau_ij = gamma_i / deg(i); sigma_j = min over even subsets of the tau sum.
LpSolution solve_dual_lp(const CssCode &code, const BitVector &e) {
    LpModel model = build_dual_lp(code, e);
    const TannerGraph &g = code.x_graph();
    std::map<std::string, std::size_t> index;
    for (std::size_t v = 0; v < model.num_variables(); ++v) {
        index[model.variables()[v].name] = v;
    }
    std::vector<double> point(model.num_variables(), 0.0);
    for (std::size_t j = 0; j < g.num_checks(); ++j) {
        const auto &f = g.check_qubits[j];
        std::vector<double> tau;
        for (std::size_t i : f) {
            tau.push_back((e.get(i) ? -1.0 : 1.0) / static_cast<double>(g.qubit_checks[i].size()));
        }
        double sigma = 0.0;
        for (std::uint32_t mask = 0; mask < (1u << f.size()); ++mask) {
            if (std::popcount(mask) % 2 != 0) {
                continue;
            }
            double sum = 0.0;
            for (std::size_t p = 0; p < f.size(); ++p) {
                sum += ((mask >> p) & 1u) ? tau[p] : 0.0;
            }
            sigma = std::min(sigma, sum);
        }
        point[index.at("sigma_" + std::to_string(j))] = sigma;
        for (std::size_t p = 0; p < f.size(); ++p) {
            point[index.at("tau_" + std::to_string(f[p]) + "_" + std::to_string(j))] = tau[p];
        }
    }
    SimplexOptions opts;
    opts.start_point = std::move(point);
    return solve_lp(model, opts);
}

struct Instance {
    const CssCode *code;
    BitVector e;
};

std::vector<CssCode> &small_codes() {
    static std::vector<CssCode> codes = [] {
        BinaryMatrix rep = repetition_code(3);
        std::vector<CssCode> v;
        v.push_back(build_rotated_surface(3));
        v.push_back(build_rotated_surface(5));
        v.push_back(build_hgp(rep, rep));
        v.push_back(sample_random_hgp(1, 1));
        v.push_back(build_bb_preset("72,12,6"));
        return v;
    }();
    return codes;
}

std::vector<Instance> &random_instances() {
    static std::vector<Instance> inst = [] {
        std::vector<Instance> v;
        std::mt19937_64 rng(2025);
        std::vector<CssCode> &codes = small_codes();
        const std::vector<double> rates{0.05, 0.1, 0.15};
        for (std::size_t k = 0; k < 250; ++k) {
            const CssCode &code = codes[k % codes.size()];
            BitVector e = lposd::testing::random_error(code.n(), rates[k % rates.size()], rng);
            v.push_back({&code, e});
        }
        return v;
    }();
    return inst;
}

// 2. Error-based primal and dual optima agree.
Outcome criterion2() {
    double worst = 0.0;
    std::size_t bad = 0;
    for (const Instance &in : random_instances()) {
        double primal = solve_error_lp(*in.code, in.e).objective;
        double dual = solve_dual_lp(*in.code, in.e).objective;
        double gap = std::abs(primal - dual);
        worst = std::max(worst, gap);
        bad += gap > 1e-6 ? 1 : 0;
    }
    return {bad == 0, fmt("%zu instances, max |primal - dual| = %.3g", random_instances().size(), worst)};
}

// Error-based LP decoder: rounds the offset x' from e'. A coordinate on e'
// reflects to 1 - x', so its tie at 1/2 resolves downward to keep the
// tie convention of the syndrome-based decoder.
BitVector error_based_decode(std::span<const double> x_prime, const BitVector &e_prime) {
    BitVector out = e_prime;
    for (std::size_t i = 0; i < x_prime.size(); ++i) {
        bool flip = e_prime.get(i) ? x_prime[i] > 0.5 : x_prime[i] >= 0.5;
        if (flip) {
            out.flip(i);
        }
    }
    return out;
}

// 3. The reflection maps error-LP solutions onto syndrome-LP solutions with
// the same decoder output.
Outcome criterion3() {
    std::size_t infeasible = 0, offset_bad = 0, output_diff = 0, roundtrip_bad = 0, not_optimal = 0, ties = 0;
    double worst_offset = 0.0, worst_roundtrip = 0.0;
    for (const Instance &in : random_instances()) {
        const CssCode &code = *in.code;
        std::size_t n = code.n();
        BitVector s = code.syndrome(in.e);
        LpModel syndrome_model = build_syndrome_lp(code, s);
        LpSolution error_sol = solve_error_lp(code, in.e);
        LpSolution mapped = lemma1_map(code.x_graph(), error_sol, in.e);
        if (syndrome_model.max_violation(mapped.values) > 1e-8) {
            ++infeasible;
        }
        double dev = std::abs(mapped.objective - error_sol.objective - static_cast<double>(in.e.weight()));
        worst_offset = std::max(worst_offset, dev);
        offset_bad += dev > 1e-9 ? 1 : 0;
        LpSolution back = lemma1_inverse(code.x_graph(), mapped, in.e);
        double rt = 0.0;
        for (std::size_t v = 0; v < back.values.size(); ++v) {
            rt = std::max(rt, std::abs(back.values[v] - error_sol.values[v]));
        }
        worst_roundtrip = std::max(worst_roundtrip, rt);
        roundtrip_bad += back.values.size() != error_sol.values.size() || rt > 1e-12 ? 1 : 0;
        double direct = solve_lp(syndrome_model).objective;
        not_optimal += std::abs(direct - mapped.objective) > 1e-7 ? 1 : 0;
        std::span<const double> xp(error_sol.values.data(), n);
        for (std::size_t i : in.e.support()) {
            ties += xp[i] == 0.5 ? 1 : 0;
        }
        BitVector via_error = error_based_decode(xp, in.e);
        BitVector via_syndrome = round_independent(std::span<const double>(mapped.values.data(), n));
        output_diff += via_error != via_syndrome ? 1 : 0;
    }
    bool pass = infeasible == 0 && offset_bad == 0 && roundtrip_bad == 0 && not_optimal == 0 && output_diff == 0;
    return {pass, fmt("%zu instances: infeasible %zu, mapped optimum differs from syndrome-LP optimum %zu, "
                      "offset != |e'| %zu (max dev %.2g), inverse mismatches %zu (max dev %.2g), "
                      "decoder output differences %zu (%zu ties at 1/2 on e')",
                      random_instances().size(), infeasible, not_optimal, offset_bad, worst_offset, roundtrip_bad,
                      worst_roundtrip, output_diff, ties)};
}

// 4. Overlap and cycle certificates reach exactly 4 and 8.
Outcome criterion4() {
    bool pass = true;
    std::string detail;
    struct Case {
        CssCode code;
        std::size_t objective;
        std::size_t weight;
    };
    std::vector<Case> cases{{lposd::testing::overlap_example_code(), 4, 5},
                            {lposd::testing::cycle_example_code(), 8, 9}};
    for (const Case &c : cases) {
        std::vector<BitVector> gens;
        for (std::size_t r = 0; r < c.code.num_z_checks(); ++r) {
            gens.push_back(c.code.hz().row(r));
        }
        ErrorPattern pat = build_cycle_pattern(c.code, gens, 0);
        CertificateReport report = verify_certificate(c.code, pat);
        double lp = solve_lp(build_syndrome_lp(c.code, pat.syndrome)).objective;
        bool ok = report.feasible && report.objective_matches && report.twice_objective == 2 * (long long)c.objective &&
                  pat.error.weight() == c.weight && lp <= static_cast<double>(c.objective) + 1e-7 &&
                  lp < static_cast<double>(c.weight) - 0.5;
        pass = pass && ok;
        detail += fmt("%s|e|=%zu certificate %s objective %.1f, LP optimum %.6g; ", detail.empty() ? "" : "",
                      pat.error.weight(), report.feasible ? "feasible" : "INFEASIBLE", report.objective(), lp);
    }
    detail.resize(detail.size() - 2);
    return {pass, detail};
}

// 5. OSD-CS corrects constructed patterns that defeat rounding.
Outcome criterion5() {
    std::size_t eligible = 0, osd_ok = 0, round_fail = 0, skipped = 0;
    std::size_t min_n = std::numeric_limits<std::size_t>::max();
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        BinaryMatrix h = sample_biregular_34(2, seed, 100000);
        CssCode code = build_hgp(h, repetition_code(12));
        min_n = std::min(min_n, code.n());
        DecoderContext ctx(code);
        RowSpace stabilizers(code.hz());
        for (const ErrorPattern &pat : find_patterns(code, 6, seed, 40)) {
            if (pat.reduced == Reduced::kNo || has_extraneous_stabilizer(code, pat)) {
                ++skipped;
                continue;
            }
            ++eligible;
            DecodeResult osd = lp_osd_decode(ctx, pat.syndrome, OsdConfig{});
            osd_ok += is_success(stabilizers, pat.error, osd.correction) ? 1 : 0;
            DecodeResult rounded = lp_round_decode(ctx, pat.syndrome);
            round_fail += is_success(stabilizers, pat.error, rounded.correction) ? 0 : 1;
        }
    }
    bool pass = eligible >= 20 && min_n >= 100 && osd_ok == eligible && round_fail * 10 >= eligible * 9;
    return {pass, fmt("%zu eligible patterns (n >= %zu, %zu skipped), OSD-CS success %zu/%zu, rounding failure %zu/%zu",
                      eligible, min_n, skipped, osd_ok, eligible, round_fail, eligible)};
}

// 6. Most rounding failures on the d=11 surface code miss the syndrome.
Outcome criterion6() {
    CssCode code = build_rotated_surface(11);
    DecoderSpec spec = parse_decoder("lp-round");
    std::size_t trials = 0, failures = 0, wrong = 0;
    for (std::uint64_t batch = 0; failures < 200 && batch < 1000; ++batch) {
        PointOptions opts;
        opts.trials = 500;
        opts.seed = 6;
        opts.point_index = batch;
        PointResult r = run_point(code, spec, 0.05, opts);
        trials += r.trials;
        failures += r.failures;
        wrong += r.wrong_syndrome;
    }
    double ratio = failures == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(failures);
    return {failures >= 200 && ratio > 0.5,
            fmt("%zu trials, %zu failures, %zu wrong-syndrome, p_ws/p_L = %.3f", trials, failures, wrong, ratio)};
}

// 7. LP+OSD-CS <= LP+OSD-0 <= LP+rounding on [[72,12,6]], and distance vs random ties.
Outcome criterion7() {
    CssCode code = build_bb_preset("72,12,6");
    DecoderSpec round = parse_decoder("lp-round");
    DecoderSpec osd0 = parse_decoder("lp-osd0");
    DecoderSpec osd0_random = parse_decoder("lp-osd0");
    osd0_random.osd.tie_break = TieBreak::kRandom;
    DecoderSpec cs = parse_decoder("lp-osdcs");
    PointOptions opts;
    opts.trials = 20000;
    opts.seed = 7;
    std::vector<PointResult> r = run_point_multi(code, {round, osd0, osd0_random, cs}, 0.03, opts);
    const PointResult &pr = r[0], &p0 = r[1], &pr0 = r[2], &pc = r[3];
    bool ordered = pc.p_l <= p0.p_l && p0.p_l <= pr.p_l;
    bool separated = pc.ci.high < pr.ci.low;
    bool tie_separated = p0.ci.high < pr0.ci.low;
    bool tie_direction = p0.p_l <= pr0.p_l;
    std::string tie = tie_separated ? "distance better, CI-separated"
                      : tie_direction ? "distance better, CIs overlap (indistinguishable at this size)"
                                      : "random better";
    return {ordered && separated && tie_direction,
            fmt("%zu trials: p_L cs %.5f [%.5f,%.5f], osd0 %.5f [%.5f,%.5f], round %.5f [%.5f,%.5f]; "
                "osd0 random-ties %.5f [%.5f,%.5f]: %s",
                opts.trials, pc.p_l, pc.ci.low, pc.ci.high, p0.p_l, p0.ci.low, p0.ci.high, pr.p_l, pr.ci.low,
                pr.ci.high, pr0.p_l, pr0.ci.low, pr0.ci.high, tie.c_str())};
}

// 8. No LP+OSD-CS failures below half the distance.
Outcome criterion8() {
    DecoderSpec spec = parse_decoder("lp-osdcs");
    CssCode surface = build_rotated_surface(5);
    CssCode hgp = sample_random_hgp(2, 8);
    std::size_t bound = *hgp.parameters().distance;
    std::size_t t_surface = (5 - 1) / 2;
    std::size_t t_hgp = (bound - 1) / 2;
    std::size_t errors = 0, failures = 0;
    for (auto [code, t] : {std::pair{&surface, t_surface}, std::pair{&hgp, t_hgp}}) {
        for (const SweepRow &row : exhaustive_sweep(*code, spec, t)) {
            errors += row.errors;
            failures += row.failures;
        }
    }
    return {failures == 0, fmt("d=5 surface up to weight %zu, random HGP s=2 (n=%zu, bound %zu) up to weight %zu: "
                               "%zu errors, %zu failures",
                               t_surface, hgp.n(), bound, t_hgp, errors, failures)};
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                   criterion5, criterion6, criterion7, criterion8};
    std::vector<std::size_t> selected;
    for (int a = 1; a < argc; ++a) {
        std::size_t k = std::strtoul(argv[a], nullptr, 10);
        if (k < 1 || k > criteria.size()) {
            std::fprintf(stderr, "error: unknown criterion '%s'\n", argv[a]);
            return 2;
        }
        selected.push_back(k);
    }
    if (selected.empty()) {
        for (std::size_t k = 1; k <= criteria.size(); ++k) {
            selected.push_back(k);
        }
    }
    bool all = true;
    for (std::size_t k : selected) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[k - 1]();
        } catch (const std::exception &ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %zu: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", k, out.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && out.pass;
    }
    return all ? 0 : 1;
}
