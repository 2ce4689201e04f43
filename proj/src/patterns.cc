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


#include "lposd/patterns.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <ostream>
#include <random>

#include "json.hpp"
#include "lposd/errors.h"

namespace lposd {

const char *reduced_name(Reduced r) {
    switch (r) {
        case Reduced::kYes:
            return "yes";
        case Reduced::kNo:
            return "no";
        case Reduced::kUnchecked:
            return "unchecked";
    }
    return "unchecked";
}

namespace {

std::uint32_t mask_of(const std::vector<std::size_t> &support, const BitVector &v) {
    std::uint32_t mask = 0;
    for (std::size_t p = 0; p < support.size(); ++p) {
        if (v.get(support[p])) {
            mask |= std::uint32_t{1} << p;
        }
    }
    return mask;
}

std::vector<std::size_t> sample_subset(std::vector<std::size_t> pool, std::size_t count, std::mt19937_64 &rng) {
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

void require_stabilizer(const CssCode &code, const BitVector &g, const char *what) {
    if (g.size() != code.n()) {
        throw PreconditionViolated(std::string(what) + " has the wrong length");
    }
    if (!in_rowspace(code.hz(), g)) {
        throw PreconditionViolated(std::string(what) + " is not a Z stabilizer");
    }
    if (g.weight() % 2 != 0) {
        throw PreconditionViolated(std::string(what) + " has odd weight " + std::to_string(g.weight()));
    }
}

// Every X check touching `qubits` must meet `sum`.
void require_checks_meet(const CssCode &code, const BitVector &qubits, const BitVector &sum) {
    const TannerGraph &gx = code.x_graph();
    for (std::size_t i : qubits.support()) {
        for (std::size_t j : gx.qubit_checks[i]) {
            bool meets = false;
            for (std::size_t q : gx.check_qubits[j]) {
                meets |= sum.get(q);
            }
            if (!meets) {
                throw PreconditionViolated("X check " + std::to_string(j) + " next to qubit " + std::to_string(i) +
                                           " does not meet the generator sum");
            }
        }
    }
}

ErrorPattern finish_pattern(const CssCode &code, BitVector e, const BitVector &half, std::vector<BitVector> gens,
                            std::vector<std::size_t> links) {
    ErrorPattern pat;
    pat.code_ref = code.name();
    pat.syndrome = code.syndrome(e);
    pat.certificate = build_certificate(code.x_graph(), pat.syndrome, half);
    pat.claimed_objective = e.weight() - 1;
    pat.error = std::move(e);
    pat.generators = std::move(gens);
    pat.links = std::move(links);
    CertificateReport report = verify_certificate(code.x_graph(), pat.syndrome, pat.certificate, pat.claimed_objective);
    if (!report.feasible || !report.objective_matches) {
        throw PreconditionViolated("constructed certificate is not valid: " +
                                   (report.violations.empty() ? std::string("objective mismatch") : report.violations[0]));
    }
    return pat;
}

template <typename Sampler>
ErrorPattern sample_reduced(const CssCode &code, const PatternOptions &options, Sampler sample) {
    ErrorPattern best;
    for (std::size_t attempt = 0; attempt <= options.max_resamples; ++attempt) {
        ErrorPattern pat = sample(attempt);
        pat.reduced = is_reduced(code, pat.error, options.reduce_budget).status;
        if (pat.reduced != Reduced::kNo) {
            return pat;
        }
        best = std::move(pat);
    }
    return best;
}

}  // namespace

Certificate build_certificate(const TannerGraph &x_graph, const BitVector &syndrome, const BitVector &half_support) {
    Certificate cert;
    cert.x_twice.assign(x_graph.num_qubits(), 0);
    for (std::size_t i : half_support.support()) {
        cert.x_twice[i] = 1;
    }
    cert.w.resize(x_graph.num_checks());
    for (std::size_t j = 0; j < x_graph.num_checks(); ++j) {
        std::uint32_t sj = mask_of(x_graph.check_qubits[j], half_support);
        if (sj == 0) {
            cert.w[j].push_back({0, 2});
        } else if (!syndrome.get(j)) {
            cert.w[j].push_back({0, 1});
            cert.w[j].push_back({sj, 1});
        } else {
            std::uint32_t lowest = sj & (~sj + 1);
            cert.w[j].push_back({lowest, 1});
            cert.w[j].push_back({sj ^ lowest, 1});
        }
    }
    return cert;
}

ErrorPattern build_overlap_pattern(const CssCode &code, const BitVector &g, const BitVector &g2, std::uint64_t seed,
                                   const PatternOptions &options) {
    require_stabilizer(code, g, "g");
    require_stabilizer(code, g2, "g'");
    BitVector overlap = g & g2;
    if (overlap.weight() < 2) {
        throw PreconditionViolated("generators overlap in " + std::to_string(overlap.weight()) + " qubits, need >= 2");
    }
    BitVector sum = g ^ g2;
    require_checks_meet(code, overlap, sum);
    std::vector<std::size_t> only_g = (g & sum).support();
    std::vector<std::size_t> only_g2 = (g2 & sum).support();
    std::vector<std::size_t> shared = overlap.support();
    std::mt19937_64 rng(seed);
    return sample_reduced(code, options, [&](std::size_t) {
        BitVector e(code.n());
        for (std::size_t i : sample_subset(only_g, only_g.size() / 2, rng)) {
            e.set(i);
        }
        for (std::size_t i : sample_subset(only_g2, (only_g2.size() + 1) / 2, rng)) {
            e.set(i);
        }
        e.set(shared[std::uniform_int_distribution<std::size_t>(0, shared.size() - 1)(rng)]);
        return finish_pattern(code, std::move(e), sum, {g, g2}, {});
    });
}

ErrorPattern build_cycle_pattern(const CssCode &code, const std::vector<BitVector> &cycle, std::uint64_t seed,
                                 const PatternOptions &options) {
    std::size_t k = cycle.size();
    if (k == 2) {
        return build_overlap_pattern(code, cycle[0], cycle[1], seed, options);
    }
    if (k < 2) {
        throw PreconditionViolated("a cycle needs at least two generators");
    }
    for (std::size_t a = 0; a < k; ++a) {
        require_stabilizer(code, cycle[a], ("g_" + std::to_string(a)).c_str());
    }
    std::vector<std::size_t> links;
    BitVector link_set(code.n());
    BitVector sum(code.n());
    for (std::size_t a = 0; a < k; ++a) {
        sum ^= cycle[a];
        for (std::size_t b = a + 1; b < k; ++b) {
            std::size_t shared = (cycle[a] & cycle[b]).weight();
            bool adjacent = b == a + 1 || (a == 0 && b == k - 1);
            if (adjacent && shared != 1) {
                throw PreconditionViolated("g_" + std::to_string(a) + " and g_" + std::to_string(b) + " share " +
                                           std::to_string(shared) + " qubits, need exactly 1");
            }
            if (!adjacent && shared != 0) {
                throw PreconditionViolated("non-adjacent g_" + std::to_string(a) + " and g_" + std::to_string(b) +
                                           " intersect");
            }
        }
        std::size_t link = (cycle[a] & cycle[(a + 1) % k]).support()[0];
        links.push_back(link);
        link_set.set(link);
    }
    require_checks_meet(code, link_set, sum);
    std::vector<std::vector<std::size_t>> privates;
    for (const BitVector &g : cycle) {
        privates.push_back((g & sum).support());
    }
    std::mt19937_64 rng(seed);
    return sample_reduced(code, options, [&](std::size_t) {
        BitVector e(code.n());
        e.set(links[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)]);
        for (const auto &pool : privates) {
            for (std::size_t i : sample_subset(pool, pool.size() / 2, rng)) {
                e.set(i);
            }
        }
        return finish_pattern(code, std::move(e), sum, cycle, links);
    });
}

HgpCycle hgp_cycle(const BinaryMatrix &h, const BinaryMatrix &h2, const std::vector<std::size_t> &path,
                   const std::vector<std::size_t> &path2) {
    std::size_t na = h.cols();
    std::size_t na2 = h2.cols();
    std::size_t nb2 = h2.rows();
    auto qubit_aa = [&](std::size_t a, std::size_t a2) { return a * na2 + a2; };
    auto qubit_bb = [&](std::size_t b, std::size_t b2) { return na * na2 + b * nb2 + b2; };
    auto zcheck = [&](std::size_t b, std::size_t a2) { return b * na2 + a2; };

    if (path.empty() || path.size() % 2 == 0 || path2.empty() || path2.size() % 2 == 0) {
        throw PreconditionViolated("paths must have odd length (check..check and bit..bit)");
    }
    for (std::size_t t = 0; t < path.size(); ++t) {
        bool is_check = t % 2 == 0;
        if (path[t] >= (is_check ? h.rows() : h.cols())) {
            throw PreconditionViolated("path vertex out of range");
        }
        if (t > 0) {
            std::size_t b = is_check ? path[t] : path[t - 1];
            std::size_t a = is_check ? path[t - 1] : path[t];
            if (!h.get(b, a)) {
                throw PreconditionViolated("consecutive path vertices are not adjacent");
            }
        }
    }
    for (std::size_t t = 0; t < path2.size(); ++t) {
        bool is_bit = t % 2 == 0;
        if (path2[t] >= (is_bit ? h2.cols() : h2.rows())) {
            throw PreconditionViolated("path vertex out of range");
        }
        if (t > 0) {
            std::size_t b = is_bit ? path2[t - 1] : path2[t];
            std::size_t a = is_bit ? path2[t] : path2[t - 1];
            if (!h2.get(b, a)) {
                throw PreconditionViolated("consecutive path vertices are not adjacent");
            }
        }
    }

    HgpCycle out;
    bool closed = path.size() >= 3 && path.front() == path.back();
    if (closed) {
        if (path2.size() != 1) {
            throw PreconditionViolated("a closed path combines with a single bit of the second code");
        }
        std::size_t a2 = path2[0];
        for (std::size_t t = 0; t + 1 < path.size(); t += 2) {
            out.z_checks.push_back(zcheck(path[t], a2));
            out.links.push_back(qubit_aa(path[t + 1], a2));
        }
    } else {
        if (path.size() < 3 || path2.size() < 3) {
            throw PreconditionViolated("open paths need at least three vertices each");
        }
        std::size_t r = path.size();
        std::size_t r2 = path2.size();
        std::size_t first2 = path2.front();
        std::size_t last2 = path2.back();
        std::size_t first = path.front();
        std::size_t last = path.back();
        for (std::size_t t = 0; t + 1 < r; t += 2) {
            out.z_checks.push_back(zcheck(path[t], first2));
            out.links.push_back(qubit_aa(path[t + 1], first2));
        }
        for (std::size_t u = 0; u + 1 < r2; u += 2) {
            out.z_checks.push_back(zcheck(last, path2[u]));
            out.links.push_back(qubit_bb(last, path2[u + 1]));
        }
        for (std::size_t t = r - 1; t >= 2; t -= 2) {
            out.z_checks.push_back(zcheck(path[t], last2));
            out.links.push_back(qubit_aa(path[t - 1], last2));
        }
        for (std::size_t u = r2 - 1; u >= 2; u -= 2) {
            out.z_checks.push_back(zcheck(first, path2[u]));
            out.links.push_back(qubit_bb(first, path2[u - 1]));
        }
    }
    std::vector<std::size_t> sorted = out.z_checks;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw PreconditionViolated("paths share a vertex; the product cycle is not simple");
    }
    sorted = out.links;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw PreconditionViolated("paths share a vertex; the product cycle is not simple");
    }
    return out;
}

CertificateReport verify_certificate(const TannerGraph &x_graph, const BitVector &syndrome, const Certificate &cert,
                                     std::size_t claimed_objective) {
    CertificateReport rep;
    auto fail = [&](std::string msg) {
        rep.feasible = false;
        rep.violations.push_back(std::move(msg));
    };
    if (cert.x_twice.size() != x_graph.num_qubits() || cert.w.size() != x_graph.num_checks() ||
        syndrome.size() != x_graph.num_checks()) {
        fail("certificate dimensions do not match the code");
        return rep;
    }
    for (std::size_t i = 0; i < cert.x_twice.size(); ++i) {
        if (cert.x_twice[i] < 0) {
            fail("x_" + std::to_string(i) + " is negative");
        }
        rep.twice_objective += cert.x_twice[i];
    }
    for (std::size_t j = 0; j < x_graph.num_checks(); ++j) {
        const auto &f = x_graph.check_qubits[j];
        std::uint32_t limit = std::uint32_t{1} << f.size();
        int norm = 0;
        std::vector<int> edge(f.size(), 0);
        std::vector<std::uint32_t> seen;
        for (const CertificateTerm &t : cert.w[j]) {
            std::string name = "w_" + std::to_string(j) + "_" + std::to_string(t.mask);
            if (t.mask >= limit) {
                fail(name + " is not a subset of the check support");
                continue;
            }
            if (static_cast<bool>(std::popcount(t.mask) & 1) != syndrome.get(j)) {
                fail(name + " has the wrong parity for the syndrome");
            }
            if (std::find(seen.begin(), seen.end(), t.mask) != seen.end()) {
                fail(name + " appears twice");
            }
            seen.push_back(t.mask);
            if (t.twice < 0) {
                fail(name + " is negative");
            }
            norm += t.twice;
            for (std::size_t p = 0; p < f.size(); ++p) {
                if ((t.mask >> p) & 1u) {
                    edge[p] += t.twice;
                }
            }
        }
        if (norm != 2) {
            fail("norm_" + std::to_string(j) + ": normalization sums to " + std::to_string(norm) + "/2");
        }
        for (std::size_t p = 0; p < f.size(); ++p) {
            if (edge[p] != cert.x_twice[f[p]]) {
                fail("edge_" + std::to_string(f[p]) + "_" + std::to_string(j) + ": consistency fails");
            }
        }
    }
    rep.objective_matches = rep.twice_objective == 2 * static_cast<long long>(claimed_objective);
    return rep;
}

CertificateReport verify_certificate(const CssCode &code, const ErrorPattern &pattern) {
    CertificateReport rep =
        verify_certificate(code.x_graph(), pattern.syndrome, pattern.certificate, pattern.claimed_objective);
    if (pattern.error.size() != code.n() || !(code.syndrome(pattern.error) == pattern.syndrome)) {
        rep.feasible = false;
        rep.violations.push_back("syndrome does not match H_X e");
    }
    if (pattern.error.weight() != pattern.claimed_objective + 1) {
        rep.objective_matches = false;
        rep.violations.push_back("claimed objective differs from |e| - 1");
    }
    return rep;
}

std::vector<double> certificate_values(const LpModel &model, const Certificate &cert) {
    std::vector<double> values(model.num_variables(), 0.0);
    for (std::size_t i = 0; i < cert.x_twice.size() && i < model.num_qubit_vars; ++i) {
        values[i] = cert.x_twice[i] / 2.0;
    }
    for (std::size_t j = 0; j < cert.w.size(); ++j) {
        for (const CertificateTerm &t : cert.w[j]) {
            std::size_t var = model.subsets[model.check_subset_begin[j] + (t.mask >> 1)].var;
            values[var] = t.twice / 2.0;
        }
    }
    return values;
}

bool check_poison(const CssCode &code, const BitVector &e, const PoisonAssignment &tau, double tol) {
    const TannerGraph &gx = code.x_graph();
    if (tau.tau.size() != gx.num_checks()) {
        return false;
    }
    std::vector<double> load(code.n(), 0.0);
    for (std::size_t j = 0; j < gx.num_checks(); ++j) {
        const auto &f = gx.check_qubits[j];
        if (tau.tau[j].size() != f.size()) {
            return false;
        }
        for (std::size_t p = 0; p < f.size(); ++p) {
            load[f[p]] += tau.tau[j][p];
            for (std::size_t q = p + 1; q < f.size(); ++q) {
                if (tau.tau[j][p] + tau.tau[j][q] < -tol) {
                    return false;
                }
            }
        }
    }
    for (std::size_t i = 0; i < code.n(); ++i) {
        double gamma = e.get(i) ? -1.0 : 1.0;
        if (load[i] > gamma + tol) {
            return false;
        }
    }
    return true;
}

ReducedCheck is_reduced(const CssCode &code, const BitVector &e, std::size_t budget) {
    ReducedCheck out;
    std::size_t w = e.weight();
    RowSpace space(code.hz());
    const auto &basis = space.basis();
    if (basis.size() <= kExhaustiveCosetRank) {
        BitVector current = e;
        BitVector stab(code.n());
        std::uint64_t total = std::uint64_t{1} << basis.size();
        for (std::uint64_t step = 1; step < total; ++step) {
            std::size_t flip = static_cast<std::size_t>(std::countr_zero(step));
            current ^= basis[flip];
            stab ^= basis[flip];
            if (current.weight() < w) {
                out.status = Reduced::kNo;
                out.witness = stab;
                return out;
            }
        }
        out.status = Reduced::kYes;
        return out;
    }
    const BinaryMatrix &hz = code.hz();
    std::size_t m = hz.rows();
    std::vector<std::size_t> chosen;
    BitVector stab(code.n());
    std::function<bool(std::size_t)> search = [&](std::size_t start) -> bool {
        if (!chosen.empty() && (e ^ stab).weight() < w) {
            return true;
        }
        if (chosen.size() == budget) {
            return false;
        }
        for (std::size_t r = start; r < m; ++r) {
            chosen.push_back(r);
            stab ^= hz.row(r);
            if (search(r + 1)) {
                return true;
            }
            stab ^= hz.row(r);
            chosen.pop_back();
        }
        return false;
    };
    if (budget > 0 && search(0)) {
        out.status = Reduced::kNo;
        out.witness = stab;
    }
    return out;
}

bool has_extraneous_stabilizer(const CssCode &code, const ErrorPattern &pattern) {
    BitVector support(code.n());
    for (const BitVector &g : pattern.generators) {
        for (std::size_t i : g.support()) {
            support.set(i);
        }
    }
    // Combinations y of H_Z rows vanishing outside the support.
    std::vector<std::size_t> outside;
    for (std::size_t i = 0; i < code.n(); ++i) {
        if (!support.get(i)) {
            outside.push_back(i);
        }
    }
    BinaryMatrix restricted = code.hz().select_columns(outside).transpose();
    BinaryMatrix inside(0, code.n());
    for (const BitVector &y : kernel_basis(restricted)) {
        BitVector stab(code.n());
        for (std::size_t r : y.support()) {
            stab ^= code.hz().row(r);
        }
        inside.append_row(std::move(stab));
    }
    BinaryMatrix gens(0, code.n());
    for (const BitVector &g : pattern.generators) {
        gens.append_row(g);
    }
    return rank(inside) > rank(gens);
}

std::vector<BitVector> even_generators(const CssCode &code) {
    const BinaryMatrix &hz = code.hz();
    std::vector<BitVector> out;
    std::vector<std::size_t> odd;
    for (std::size_t r = 0; r < hz.rows(); ++r) {
        std::size_t w = hz.row(r).weight();
        if (w == 0) {
            continue;
        }
        if (w % 2 == 0) {
            out.push_back(hz.row(r));
        } else {
            odd.push_back(r);
        }
    }
    for (std::size_t a = 0; a < odd.size(); ++a) {
        for (std::size_t b = a + 1; b < odd.size(); ++b) {
            if ((hz.row(odd[a]) & hz.row(odd[b])).any()) {
                out.push_back(hz.row(odd[a]) ^ hz.row(odd[b]));
            }
        }
    }
    return out;
}

std::vector<ErrorPattern> find_patterns(const CssCode &code, std::size_t max_cycle, std::uint64_t seed,
                                        std::size_t limit) {
    std::vector<ErrorPattern> out;
    std::vector<BitVector> gens = even_generators(code);
    std::size_t g = gens.size();
    std::vector<std::vector<std::size_t>> single(g);
    std::uint64_t counter = 0;
    auto attempt = [&](const std::vector<BitVector> &cycle) {
        try {
            out.push_back(build_cycle_pattern(code, cycle, seed + counter++));
        } catch (const PreconditionViolated &) {
        }
    };
    for (std::size_t a = 0; a < g && out.size() < limit; ++a) {
        for (std::size_t b = a + 1; b < g && out.size() < limit; ++b) {
            std::size_t shared = (gens[a] & gens[b]).weight();
            if (shared == 1) {
                single[a].push_back(b);
                single[b].push_back(a);
            } else if (shared >= 2 && max_cycle >= 4) {
                attempt({gens[a], gens[b]});
            }
        }
    }
    // Simple cycles of generators pairwise meeting in one qubit, rooted at
    // their smallest member.
    std::size_t max_len = max_cycle / 2;
    std::vector<std::size_t> stack;
    std::vector<char> on_stack(g, 0);
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
        if (out.size() >= limit) {
            return;
        }
        for (std::size_t u : single[v]) {
            if (u == stack[0] && stack.size() >= 3 && stack[1] < stack.back()) {
                std::vector<BitVector> cycle;
                for (std::size_t idx : stack) {
                    cycle.push_back(gens[idx]);
                }
                attempt(cycle);
            } else if (u > stack[0] && !on_stack[u] && stack.size() < max_len) {
                stack.push_back(u);
                on_stack[u] = 1;
                dfs(u);
                on_stack[u] = 0;
                stack.pop_back();
            }
        }
    };
    for (std::size_t root = 0; root < g && out.size() < limit; ++root) {
        stack = {root};
        on_stack[root] = 1;
        dfs(root);
        on_stack[root] = 0;
    }
    return out;
}

void write_pattern(std::ostream &out, const ErrorPattern &pattern) {
    nlohmann::ordered_json rec;
    rec["code"] = pattern.code_ref;
    rec["error"] = pattern.error.support();
    rec["syndrome"] = pattern.syndrome.support();
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (const BitVector &g : pattern.generators) {
        gens.push_back(g.support());
    }
    rec["generators"] = gens;
    rec["links"] = pattern.links;
    rec["objective"] = pattern.claimed_objective;
    rec["reduced"] = reduced_name(pattern.reduced);
    auto rational = [](int twice) {
        return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
    };
    nlohmann::ordered_json cert = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < pattern.certificate.x_twice.size(); ++i) {
        if (pattern.certificate.x_twice[i] != 0) {
            cert.push_back({"x_" + std::to_string(i), rational(pattern.certificate.x_twice[i])});
        }
    }
    for (std::size_t j = 0; j < pattern.certificate.w.size(); ++j) {
        for (const CertificateTerm &t : pattern.certificate.w[j]) {
            if (t.twice != 0) {
                cert.push_back({"w_" + std::to_string(j) + "_" + std::to_string(t.mask), rational(t.twice)});
            }
        }
    }
    rec["certificate"] = cert;
    out << rec.dump() << "\n";
}

ErrorPattern read_pattern(const std::string &line, const TannerGraph &x_graph) {
    nlohmann::json rec;
    try {
        rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError(std::string("pattern record: ") + ex.what());
    }
    std::size_t n = x_graph.num_qubits();
    std::size_t m = x_graph.num_checks();
    auto support = [](const nlohmann::json &arr, std::size_t len) {
        std::vector<std::size_t> idx = arr.get<std::vector<std::size_t>>();
        for (std::size_t i : idx) {
            if (i >= len) {
                throw ParseError("pattern record index out of range");
            }
        }
        return BitVector::from_support(len, idx);
    };
    ErrorPattern pat;
    try {
        pat.code_ref = rec.at("code").get<std::string>();
        pat.error = support(rec.at("error"), n);
        pat.syndrome = support(rec.at("syndrome"), m);
        for (const auto &g : rec.at("generators")) {
            pat.generators.push_back(support(g, n));
        }
        pat.links = rec.at("links").get<std::vector<std::size_t>>();
        pat.claimed_objective = rec.at("objective").get<std::size_t>();
        std::string red = rec.at("reduced").get<std::string>();
        pat.reduced = red == "yes" ? Reduced::kYes : red == "no" ? Reduced::kNo : Reduced::kUnchecked;
        pat.certificate.x_twice.assign(n, 0);
        pat.certificate.w.resize(m);
        for (const auto &entry : rec.at("certificate")) {
            std::string name = entry.at(0).get<std::string>();
            std::string value = entry.at(1).get<std::string>();
            int twice = value.ends_with("/2") ? std::stoi(value.substr(0, value.size() - 2)) : 2 * std::stoi(value);
            if (name.starts_with("x_")) {
                std::size_t i = std::stoul(name.substr(2));
                if (i >= n) {
                    throw ParseError("certificate variable out of range: " + name);
                }
                pat.certificate.x_twice[i] = twice;
            } else if (name.starts_with("w_")) {
                std::size_t split = name.find('_', 2);
                if (split == std::string::npos) {
                    throw ParseError("bad certificate variable: " + name);
                }
                std::size_t j = std::stoul(name.substr(2, split - 2));
                if (j >= m) {
                    throw ParseError("certificate variable out of range: " + name);
                }
                pat.certificate.w[j].push_back({static_cast<std::uint32_t>(std::stoul(name.substr(split + 1))), twice});
            } else {
                throw ParseError("bad certificate variable: " + name);
            }
        }
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError(std::string("pattern record: ") + ex.what());
    } catch (const std::invalid_argument &ex) {
        throw ParseError(std::string("pattern record: ") + ex.what());
    }
    return pat;
}

}  // namespace lposd
