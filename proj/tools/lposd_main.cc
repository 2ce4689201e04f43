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


#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "lposd/codes.h"
#include "lposd/errors.h"
#include "lposd/lp_decoder.h"
#include "lposd/patterns.h"
#include "lposd/sim.h"

namespace {

using namespace lposd;

struct MakeCodeArgs {
    std::string family;
    std::size_t d = 0;
    std::size_t rep = 0;
    std::string h_path;
    std::string h2_path;
    std::string preset = "72,12,6";
    std::size_t s = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int make_code(const MakeCodeArgs &a) {
    CssCode code;
    if (a.family == "surface") {
        code = build_rotated_surface(a.d);
        code.set_name("surface_d" + std::to_string(a.d));
    } else if (a.family == "hgp") {
        if (a.rep > 0) {
            BinaryMatrix h = repetition_code(a.rep);
            code = build_hgp(h, h);
            code.set_name("hgp_rep" + std::to_string(a.rep));
        } else if (!a.h_path.empty()) {
            BinaryMatrix h = load_sparse(a.h_path);
            BinaryMatrix h2 = a.h2_path.empty() ? h : load_sparse(a.h2_path);
            code = build_hgp(h, h2);
        } else {
            throw InvalidParameter("hgp needs --rep L or --matrix FILE [--matrix2 FILE]");
        }
    } else if (a.family == "bb") {
        code = build_bb_preset(a.preset);
        code.set_name("bb_" + a.preset);
    } else if (a.family == "random-hgp") {
        code = sample_random_hgp(a.s, a.seed);
    } else {
        throw InvalidParameter("unknown family '" + a.family + "'");
    }
    code.set_seed(a.seed);
    save_code(a.out, code);
    std::cout << code.name() << " n=" << code.n() << " k=" << code.k() << "\n";
    return 0;
}

std::vector<double> parse_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(std::stod(item));
        }
    }
    return out;
}

struct SimulateArgs {
    std::string code_dir;
    std::size_t random_hgp = 0;
    std::size_t codes = 10;
    std::size_t trials_per_code = 10;
    std::string decoders = "lp-osdcs";
    std::string p_list;
    std::size_t trials = 10000;
    std::uint64_t seed = 0;
    std::size_t workers = 0;
    std::string out;
    std::string osd;
    std::size_t lambda = 60;
    std::string tie_break;
    std::size_t bp_max_iter = 0;
    std::string dump_lp;
    bool no_timing = false;
};

DecoderSpec configure(const std::string &name, const SimulateArgs &a) {
    std::string key = name;
    if (key == "lp-osd" || key == "bp-osd") {
        key += a.osd == "0" ? "0" : "cs";
    }
    DecoderSpec spec = parse_decoder(key);
    if (!a.osd.empty() && spec.kind != DecoderKind::kLpRound && spec.kind != DecoderKind::kBp) {
        if (a.osd != "0" && a.osd != "cs") {
            throw InvalidParameter("--osd takes 0 or cs");
        }
        spec.osd.order = a.osd == "0" ? OsdOrder::kOsd0 : OsdOrder::kOsdCs;
        spec.kind = spec.uses_lp() ? (a.osd == "0" ? DecoderKind::kLpOsd0 : DecoderKind::kLpOsdCs)
                                   : (a.osd == "0" ? DecoderKind::kBpOsd0 : DecoderKind::kBpOsdCs);
    }
    spec.osd.lambda = a.lambda;
    if (!a.tie_break.empty()) {
        if (a.tie_break != "distance" && a.tie_break != "random") {
            throw InvalidParameter("--tie-break takes distance or random");
        }
        spec.osd.tie_break = a.tie_break == "distance" ? TieBreak::kDistance : TieBreak::kRandom;
    }
    spec.bp.max_iterations = a.bp_max_iter;
    return spec;
}

void dump_first_lp(const CssCode &code, double p, const SimulateArgs &a) {
    std::mt19937_64 rng = trial_rng(a.seed, 0, 0);
    BitVector e = sample_error(code.n(), p, rng);
    LpModel model = build_syndrome_lp(code, code.syndrome(e));
    std::ofstream f(a.dump_lp);
    if (!f) {
        throw InvalidParameter("cannot write " + a.dump_lp);
    }
    write_lp_format(f, model);
}

int simulate(const SimulateArgs &a) {
    std::vector<double> ps = parse_list(a.p_list);
    if (ps.empty()) {
        throw InvalidParameter("--p needs at least one value");
    }
    std::vector<DecoderSpec> specs;
    std::stringstream ss(a.decoders);
    std::string item;
    while (std::getline(ss, item, ',')) {
        specs.push_back(configure(item, a));
    }
    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) {
            throw InvalidParameter("cannot write " + a.out);
        }
    }
    std::ostream &out = a.out.empty() ? std::cout : file;
    RecordOptions record;
    record.timing = !a.no_timing;

    if (a.random_hgp > 0) {
        std::mt19937_64 seeds(a.seed);
        std::vector<CssCode> codes;
        for (std::size_t c = 0; c < a.codes; ++c) {
            codes.push_back(sample_random_hgp(a.random_hgp, seeds()));
        }
        for (std::size_t k = 0; k < ps.size(); ++k) {
            for (const DecoderSpec &spec : specs) {
                EnsembleOptions eo;
                eo.n_codes = a.codes;
                eo.trials_per_code = a.trials_per_code;
                eo.seed = a.seed + k;
                eo.workers = a.workers;
                PointResult r = run_ensemble_on(codes, spec, ps[k], eo);
                PointOptions po;
                po.seed = eo.seed;
                write_point_record(out, codes[0], spec, r, po, record);
            }
        }
        return 0;
    }

    if (a.code_dir.empty()) {
        throw InvalidParameter("simulate needs --code DIR or --random-hgp S");
    }
    CssCode code = load_code(a.code_dir);
    if (!a.dump_lp.empty()) {
        dump_first_lp(code, ps[0], a);
    }
    for (std::size_t k = 0; k < ps.size(); ++k) {
        PointOptions po;
        po.trials = a.trials;
        po.seed = a.seed;
        po.point_index = k;
        po.workers = a.workers;
        std::vector<PointResult> results = run_point_multi(code, specs, ps[k], po);
        for (std::size_t d = 0; d < specs.size(); ++d) {
            write_point_record(out, code, specs[d], results[d], po, record);
        }
        out.flush();
    }
    return 0;
}

int find_patterns_cmd(const std::string &dir, std::size_t max_cycle, const std::string &out_path, std::uint64_t seed,
                      std::size_t limit) {
    CssCode code = load_code(dir);
    code.set_name(dir);
    std::vector<ErrorPattern> patterns = find_patterns(code, max_cycle, seed, limit);
    std::ofstream f(out_path);
    if (!f) {
        throw InvalidParameter("cannot write " + out_path);
    }
    for (const ErrorPattern &p : patterns) {
        write_pattern(f, p);
    }
    std::cout << patterns.size() << " patterns written to " << out_path << "\n";
    return 0;
}

std::vector<double> read_probabilities(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw ParseError("cannot read " + path);
    }
    std::vector<double> out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        out.push_back(std::stod(line));
    }
    return out;
}

BitVector read_syndrome(const std::string &path, std::size_t m) {
    std::ifstream f(path);
    if (!f) {
        throw ParseError("cannot read " + path);
    }
    BitVector s(m);
    long long idx = 0;
    while (f >> idx) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= m) {
            throw ParseError("syndrome index " + std::to_string(idx) + " out of range");
        }
        s.set(static_cast<std::size_t>(idx));
    }
    if (!f.eof()) {
        throw ParseError("syndrome file must list detector indices");
    }
    return s;
}

int detector_decode_cmd(const std::string &matrix, const std::string &probs, const std::string &syndrome,
                        const std::string &dump_lp) {
    BinaryMatrix h = load_sparse(matrix);
    std::vector<double> p = read_probabilities(probs);
    BitVector s = read_syndrome(syndrome, h.rows());
    if (!dump_lp.empty()) {
        std::vector<double> w = log_likelihood_weights(p);
        LpModel model = build_syndrome_lp(TannerGraph::from_matrix(h), s, std::span<const double>(w));
        std::ofstream f(dump_lp);
        write_lp_format(f, model);
    }
    DecodeResult res = detector_decode(h, p, s);
    std::vector<std::size_t> support = res.correction.support();
    for (std::size_t k = 0; k < support.size(); ++k) {
        std::cout << (k ? " " : "") << support[k];
    }
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"LP and LP+OSD decoding of quantum LDPC codes"};
    app.require_subcommand(1);

    MakeCodeArgs mk;
    auto *make = app.add_subcommand("make-code", "Build a CSS code and write hx.txt, hz.txt, meta.json");
    make->add_option("--family", mk.family, "surface | hgp | bb | random-hgp")
        ->required()
        ->check(CLI::IsMember({"surface", "hgp", "bb", "random-hgp"}));
    make->add_option("--d", mk.d, "Rotated surface code distance");
    make->add_option("--rep", mk.rep, "HGP of two length-L repetition codes");
    make->add_option("--matrix", mk.h_path, "HGP first classical check matrix (sparse text)");
    make->add_option("--matrix2", mk.h2_path, "HGP second classical check matrix (defaults to --matrix)");
    make->add_option("--preset", mk.preset, "BB preset: 72,12,6 90,8,10 108,8,10 144,12,12 288,12,18 784,24,24");
    make->add_option("--s", mk.s, "Random HGP size parameter (1..6)");
    make->add_option("--seed", mk.seed, "Seed");
    make->add_option("--out", mk.out, "Output directory")->required();

    SimulateArgs sa;
    auto *sim = app.add_subcommand("simulate", "Monte Carlo logical error rates");
    sim->add_option("--code", sa.code_dir, "Code directory");
    sim->add_option("--random-hgp", sa.random_hgp, "Sample an ensemble of random HGP codes with this s");
    sim->add_option("--codes", sa.codes, "Ensemble size");
    sim->add_option("--trials-per-code", sa.trials_per_code, "Trials per ensemble code");
    sim->add_option("--decoder", sa.decoders,
                    "Comma list of lp-round, lp-osd, lp-osd0, lp-osdcs, bp, bp-osd, bp-osd0, bp-osdcs");
    sim->add_option("--p", sa.p_list, "Comma list of physical error rates")->required();
    sim->add_option("--trials", sa.trials, "Trials per point");
    sim->add_option("--seed", sa.seed, "Seed");
    sim->add_option("--workers", sa.workers, "Worker threads (0 = OpenMP default)");
    sim->add_option("--out", sa.out, "Output file (JSON lines); stdout if omitted");
    sim->add_option("--osd", sa.osd, "OSD order: 0 or cs");
    sim->add_option("--lambda", sa.lambda, "OSD-CS weight-two window");
    sim->add_option("--tie-break", sa.tie_break, "distance or random");
    sim->add_option("--bp-max-iter", sa.bp_max_iter, "BP iteration cap (0 = n)");
    sim->add_option("--dump-lp", sa.dump_lp, "Write the LP of the first trial in CPLEX LP format");
    sim->add_flag("--no-timing", sa.no_timing, "Omit wall-clock fields for bit-identical reruns");

    std::string pat_code;
    std::string pat_out;
    std::size_t max_cycle = 8;
    std::uint64_t pat_seed = 0;
    std::size_t pat_limit = 1000;
    auto *pat = app.add_subcommand("find-patterns", "Construct LP-uncorrectable error patterns");
    pat->add_option("--code", pat_code, "Code directory")->required();
    pat->add_option("--max-cycle", max_cycle, "Longest G_Z cycle (edges) to search");
    pat->add_option("--out", pat_out, "Output file (JSON lines)")->required();
    pat->add_option("--seed", pat_seed, "Seed");
    pat->add_option("--limit", pat_limit, "Maximum number of patterns");

    std::string det_matrix;
    std::string det_probs;
    std::string det_syndrome;
    std::string det_dump;
    auto *det = app.add_subcommand("detector-decode", "Weighted LP+OSD-CS on a detector check matrix");
    det->add_option("--matrix", det_matrix, "Sparse check matrix")->required();
    det->add_option("--probs", det_probs, "One probability per column, one per line")->required();
    det->add_option("--syndrome", det_syndrome, "Indices of flipped detectors")->required();
    det->add_option("--dump-lp", det_dump, "Write the weighted LP in CPLEX LP format");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sa.workers > 0) {
            omp_set_num_threads(static_cast<int>(sa.workers));
        }
        if (make->parsed()) {
            return make_code(mk);
        }
        if (sim->parsed()) {
            return simulate(sa);
        }
        if (pat->parsed()) {
            return find_patterns_cmd(pat_code, max_cycle, pat_out, pat_seed, pat_limit);
        }
        if (det->parsed()) {
            return detector_decode_cmd(det_matrix, det_probs, det_syndrome, det_dump);
        }
    } catch (const std::exception &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
