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
#include <string>
#include <vector>

#include "lposd/css_code.h"
#include "lposd/gf2.h"
#include "lposd/lp.h"

namespace lposd {

enum class Reduced { kYes, kNo, kUnchecked };

const char *reduced_name(Reduced r);

/// One auxiliary value w_{j,S}; values are stored doubled (0, 1, 2 = 0, 1/2, 1).
struct CertificateTerm {
    std::uint32_t mask;  ///< Subset of f_j by position in the sorted support.
    int twice;
};

struct Certificate {
    std::vector<int> x_twice;                        ///< Per qubit.
    std::vector<std::vector<CertificateTerm>> w;     ///< Per X check.
};

struct ErrorPattern {
    std::string code_ref;
    BitVector error;
    BitVector syndrome;
    std::vector<BitVector> generators;  ///< (g, g') or the cycle g_0..g_{K-1}.
    std::vector<std::size_t> links;     ///< i_k = g_k ∩ g_{k+1}; empty for overlap patterns.
    Certificate certificate;
    std::size_t claimed_objective = 0;  ///< |e| - 1.
    Reduced reduced = Reduced::kUnchecked;
};

struct PatternOptions {
    std::size_t max_resamples = 32;  ///< Redraws while is_reduced reports no.
    std::size_t reduce_budget = 2;
};

/// Certificate with x = 1/2 on `half_support` and the subset rules for each check.
Certificate build_certificate(const TannerGraph &x_graph, const BitVector &syndrome, const BitVector &half_support);

ErrorPattern build_overlap_pattern(const CssCode &code, const BitVector &g, const BitVector &g2, std::uint64_t seed,
                                   const PatternOptions &options = {});
ErrorPattern build_cycle_pattern(const CssCode &code, const std::vector<BitVector> &cycle, std::uint64_t seed,
                                 const PatternOptions &options = {});

struct HgpCycle {
    std::vector<std::size_t> z_checks;  ///< Row indices of H_Z, in cycle order.
    std::vector<std::size_t> links;     ///< links[k] is shared by z_checks[k] and z_checks[k+1].
};

/// Cycle in G_Z of HGP(h, h2) obtained by concatenating P x a'_1, b_r x P',
/// P x a'_r', b_1 x P'. `path` alternates checks and bits of h starting and
/// ending on a check; `path2` alternates bits and checks of h2 starting and
/// ending on a bit. A closed `path` (first == last) with a single-bit `path2`
/// gives the P x a' cycle.
HgpCycle hgp_cycle(const BinaryMatrix &h, const BinaryMatrix &h2, const std::vector<std::size_t> &path,
                   const std::vector<std::size_t> &path2);

struct CertificateReport {
    bool feasible = true;
    long long twice_objective = 0;
    bool objective_matches = false;  ///< objective == claimed_objective.
    std::vector<std::string> violations;

    double objective() const { return static_cast<double>(twice_objective) / 2.0; }
};

CertificateReport verify_certificate(const CssCode &code, const ErrorPattern &pattern);
CertificateReport verify_certificate(const TannerGraph &x_graph, const BitVector &syndrome, const Certificate &cert,
                                     std::size_t claimed_objective);

/// LP variable values of the certificate in the layout of build_syndrome_lp.
std::vector<double> certificate_values(const LpModel &model, const Certificate &cert);

struct PoisonAssignment {
    std::vector<std::vector<double>> tau;  ///< tau[j][p] for the p-th qubit of f_j.
};

bool check_poison(const CssCode &code, const BitVector &e, const PoisonAssignment &tau, double tol = 1e-9);

struct ReducedCheck {
    Reduced status = Reduced::kUnchecked;
    BitVector witness;  ///< Stabilizer lowering the weight when status is kNo.
};

inline constexpr std::size_t kExhaustiveCosetRank = 20;

ReducedCheck is_reduced(const CssCode &code, const BitVector &e, std::size_t budget);

/// True if some Z stabilizer supported inside the union of the pattern's
/// generators is not in their span.
bool has_extraneous_stabilizer(const CssCode &code, const ErrorPattern &pattern);

/// Even-weight Z stabilizers usable as pattern generators: even rows of H_Z
/// and sums of two overlapping odd rows.
std::vector<BitVector> even_generators(const CssCode &code);

/// Overlap patterns over pairs of even generators and cycle patterns over
/// short cycles of G_Z with at most max_cycle edges.
std::vector<ErrorPattern> find_patterns(const CssCode &code, std::size_t max_cycle, std::uint64_t seed,
                                        std::size_t limit = 1000);

void write_pattern(std::ostream &out, const ErrorPattern &pattern);
ErrorPattern read_pattern(const std::string &line, const TannerGraph &x_graph);

}  // namespace lposd
