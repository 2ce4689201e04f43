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

#include "lposd/css_code.h"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "lposd/errors.h"

namespace lposd {

TannerGraph TannerGraph::from_matrix(const BinaryMatrix &h) {
    TannerGraph g;
    g.check_qubits = h.row_supports();
    g.qubit_checks = h.column_supports();
    return g;
}

std::size_t TannerGraph::num_edges() const {
    std::size_t total = 0;
    for (const auto &f : check_qubits) {
        total += f.size();
    }
    return total;
}

CssCode::CssCode(BinaryMatrix hx, BinaryMatrix hz, std::string name)
    : hx_(std::move(hx)), hz_(std::move(hz)), name_(std::move(name)) {
    if (hx_.cols() != hz_.cols()) {
        throw InvalidParameter("H_X has " + std::to_string(hx_.cols()) + " columns but H_Z has " + std::to_string(hz_.cols()));
    }
    for (std::size_t j = 0; j < hx_.rows(); ++j) {
        for (std::size_t k = 0; k < hz_.rows(); ++k) {
            if (hx_.row(j).dot(hz_.row(k))) {
                throw InvalidParameter(
                    "X check " + std::to_string(j) + " anticommutes with Z check " + std::to_string(k));
            }
        }
    }
    x_graph_ = TannerGraph::from_matrix(hx_);
    z_graph_ = TannerGraph::from_matrix(hz_);
    k_ = n() - rank(hx_) - rank(hz_);
}

void save_code(const std::string &dir, const CssCode &code) {
    std::filesystem::create_directories(dir);
    save_sparse(dir + "/hx.txt", code.hx());
    save_sparse(dir + "/hz.txt", code.hz());
    nlohmann::json meta;
    meta["name"] = code.name();
    meta["n"] = code.n();
    meta["k"] = code.k();
    CodeParameters p = code.parameters();
    meta["distance"] = p.distance ? nlohmann::json(*p.distance) : nlohmann::json(nullptr);
    meta["distance_exact"] = p.distance_exact;
    meta["seed"] = code.seed() ? nlohmann::json(*code.seed()) : nlohmann::json(nullptr);
    std::ofstream out(dir + "/meta.json");
    if (!out) {
        throw Error("cannot write " + dir + "/meta.json");
    }
    out << meta.dump(2) << '\n';
}

CssCode load_code(const std::string &dir) {
    CssCode code(load_sparse(dir + "/hx.txt"), load_sparse(dir + "/hz.txt"));
    std::ifstream in(dir + "/meta.json");
    if (!in) {
        code.set_name(std::filesystem::path(dir).filename().string());
        return code;
    }
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError(dir + "/meta.json: " + ex.what());
    }
    code.set_name(meta.value("name", std::string{}));
    if (meta.contains("distance") && !meta["distance"].is_null()) {
        code.declare_distance(meta["distance"].get<std::size_t>(), meta.value("distance_exact", false));
    }
    if (meta.contains("seed") && !meta["seed"].is_null()) {
        code.set_seed(meta["seed"].get<std::uint64_t>());
    }
    if (meta.contains("n") && meta["n"].get<std::size_t>() != code.n()) {
        throw ParseError(dir + "/meta.json: declared n does not match matrices");
    }
    if (meta.contains("k") && meta["k"].get<std::size_t>() != code.k()) {
        throw ParseError(dir + "/meta.json: declared k does not match matrices");
    }
    return code;
}

}  // namespace lposd
