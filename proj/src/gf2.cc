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

#include "lposd/gf2.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lposd/errors.h"

namespace lposd {

BitVector BitVector::from_support(std::size_t n, std::span<const std::size_t> support) {
    BitVector v(n);
    for (std::size_t i : support) {
        if (i >= n) {
            throw InvalidParameter("support index " + std::to_string(i) + " out of range for length " + std::to_string(n));
        }
        v.set(i);
    }
    return v;
}

BitVector BitVector::from_bits(std::span<const std::uint8_t> bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] & 1u) {
            v.set(i);
        }
    }
    return v;
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (std::uint64_t word : words_) {
        w += static_cast<std::size_t>(std::popcount(word));
    }
    return w;
}

bool BitVector::any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

bool BitVector::dot(const BitVector &other) const {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        acc ^= words_[k] & other.words_[k];
    }
    return std::popcount(acc) & 1;
}

std::vector<std::size_t> BitVector::support() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        std::uint64_t w = words_[k];
        while (w) {
            out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

std::vector<std::uint8_t> BitVector::to_bits() const {
    std::vector<std::uint8_t> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        out[i] = get(i) ? 1 : 0;
    }
    return out;
}

std::string BitVector::to_string() const {
    std::string out(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
        if (get(i)) {
            out[i] = '1';
        }
    }
    return out;
}

BitVector &BitVector::operator^=(const BitVector &other) {
    for (std::size_t k = 0; k < words_.size(); ++k) {
        words_[k] ^= other.words_[k];
    }
    return *this;
}

BitVector &BitVector::operator&=(const BitVector &other) {
    for (std::size_t k = 0; k < words_.size(); ++k) {
        words_[k] &= other.words_[k];
    }
    return *this;
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
    BinaryMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i);
    }
    return m;
}

BinaryMatrix BinaryMatrix::from_rows(std::size_t cols, const std::vector<std::vector<std::size_t>> &row_supports) {
    BinaryMatrix m(row_supports.size(), cols);
    for (std::size_t r = 0; r < row_supports.size(); ++r) {
        for (std::size_t c : row_supports[r]) {
            if (c >= cols) {
                throw InvalidParameter("column index " + std::to_string(c) + " out of range");
            }
            if (m.get(r, c)) {
                throw InvalidParameter("duplicate position in row " + std::to_string(r));
            }
            m.set(r, c);
        }
    }
    return m;
}

BinaryMatrix BinaryMatrix::from_positions(
    std::size_t rows, std::size_t cols, std::span<const std::pair<std::size_t, std::size_t>> positions) {
    BinaryMatrix m(rows, cols);
    for (auto [r, c] : positions) {
        if (r >= rows || c >= cols) {
            throw InvalidParameter("position out of range");
        }
        if (m.get(r, c)) {
            throw InvalidParameter("duplicate position");
        }
        m.set(r, c);
    }
    return m;
}

BinaryMatrix BinaryMatrix::from_dense(const std::vector<std::vector<int>> &entries) {
    std::size_t cols = entries.empty() ? 0 : entries.front().size();
    BinaryMatrix m(entries.size(), cols);
    for (std::size_t r = 0; r < entries.size(); ++r) {
        if (entries[r].size() != cols) {
            throw InvalidParameter("ragged dense matrix");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (entries[r][c] & 1) {
                m.set(r, c);
            }
        }
    }
    return m;
}

BitVector BinaryMatrix::column(std::size_t c) const {
    BitVector out(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        if (get(r, c)) {
            out.set(r);
        }
    }
    return out;
}

void BinaryMatrix::append_row(BitVector row) {
    if (row.size() != cols_) {
        throw InvalidParameter("row length mismatch");
    }
    rows_.push_back(std::move(row));
}

std::vector<std::pair<std::size_t, std::size_t>> BinaryMatrix::positions() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c : rows_[r].support()) {
            out.emplace_back(r, c);
        }
    }
    return out;
}

std::vector<std::vector<std::size_t>> BinaryMatrix::row_supports() const {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(rows());
    for (const auto &row : rows_) {
        out.push_back(row.support());
    }
    return out;
}

std::vector<std::vector<std::size_t>> BinaryMatrix::column_supports() const {
    std::vector<std::vector<std::size_t>> out(cols_);
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c : rows_[r].support()) {
            out[c].push_back(r);
        }
    }
    return out;
}

std::size_t BinaryMatrix::count_ones() const {
    std::size_t total = 0;
    for (const auto &row : rows_) {
        total += row.weight();
    }
    return total;
}

std::size_t BinaryMatrix::max_row_weight() const {
    std::size_t best = 0;
    for (const auto &row : rows_) {
        best = std::max(best, row.weight());
    }
    return best;
}

std::size_t BinaryMatrix::max_column_weight() const {
    std::size_t best = 0;
    for (const auto &col : column_supports()) {
        best = std::max(best, col.size());
    }
    return best;
}

bool BinaryMatrix::is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const BitVector &r) { return r.none(); });
}

BinaryMatrix BinaryMatrix::transpose() const {
    BinaryMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c : rows_[r].support()) {
            t.set(c, r);
        }
    }
    return t;
}

BinaryMatrix BinaryMatrix::select_columns(std::span<const std::size_t> cols) const {
    BinaryMatrix out(rows(), cols.size());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (get(r, cols[k])) {
                out.set(r, k);
            }
        }
    }
    return out;
}

BitVector BinaryMatrix::multiply(const BitVector &v) const {
    if (v.size() != cols_) {
        throw InvalidParameter("vector length " + std::to_string(v.size()) + " does not match " + std::to_string(cols_) + " columns");
    }
    BitVector out(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        if (rows_[r].dot(v)) {
            out.set(r);
        }
    }
    return out;
}

BinaryMatrix operator*(const BinaryMatrix &a, const BinaryMatrix &b) {
    if (a.cols() != b.rows()) {
        throw InvalidParameter("matrix product dimension mismatch");
    }
    BinaryMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k : a.row(r).support()) {
            out.row(r) ^= b.row(k);
        }
    }
    return out;
}

BinaryMatrix kron(const BinaryMatrix &a, const BinaryMatrix &b) {
    BinaryMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (auto [ar, ac] : a.positions()) {
        for (auto [br, bc] : b.positions()) {
            out.set(ar * b.rows() + br, ac * b.cols() + bc);
        }
    }
    return out;
}

BinaryMatrix hstack(const BinaryMatrix &left, const BinaryMatrix &right) {
    if (left.rows() != right.rows()) {
        throw InvalidParameter("hstack row count mismatch");
    }
    BinaryMatrix out(left.rows(), left.cols() + right.cols());
    for (auto [r, c] : left.positions()) {
        out.set(r, c);
    }
    for (auto [r, c] : right.positions()) {
        out.set(r, left.cols() + c);
    }
    return out;
}

BinaryMatrix vstack(const BinaryMatrix &top, const BinaryMatrix &bottom) {
    if (top.cols() != bottom.cols()) {
        throw InvalidParameter("vstack column count mismatch");
    }
    BinaryMatrix out = top;
    for (std::size_t r = 0; r < bottom.rows(); ++r) {
        out.append_row(bottom.row(r));
    }
    return out;
}

namespace {

// In-place Gauss-Jordan. Pivot for each column is the first eligible row,
// scanning columns left to right. Row operations are mirrored on `shadow`
// (if non-null), which must have the same number of rows.
std::vector<std::size_t> gauss_jordan(BinaryMatrix &m, BinaryMatrix *shadow) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && !m.get(pivot, c)) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        if (pivot != rank) {
            std::swap(m.row(pivot), m.row(rank));
            if (shadow) {
                std::swap(shadow->row(pivot), shadow->row(rank));
            }
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != rank && m.get(r, c)) {
                m.row(r) ^= m.row(rank);
                if (shadow) {
                    shadow->row(r) ^= shadow->row(rank);
                }
            }
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const BinaryMatrix &m) {
    BinaryMatrix work = m;
    return gauss_jordan(work, nullptr).size();
}

RowReduction row_reduce(const BinaryMatrix &m) {
    RowReduction out{m, {}, BinaryMatrix::identity(m.rows())};
    out.pivot_cols = gauss_jordan(out.reduced, &out.transform);
    return out;
}

BitVector solve_on_columns(const BinaryMatrix &m, std::span<const std::size_t> cols, const BitVector &s) {
    if (s.size() != m.rows()) {
        throw InvalidParameter("syndrome length does not match row count");
    }
    BinaryMatrix sub = m.select_columns(cols);
    BinaryMatrix rhs(m.rows(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        rhs.set(r, 0, s.get(r));
    }
    std::vector<std::size_t> pivots = gauss_jordan(sub, &rhs);
    if (pivots.size() != cols.size()) {
        throw SingularSubmatrix("selected columns are linearly dependent");
    }
    for (std::size_t r = pivots.size(); r < m.rows(); ++r) {
        if (rhs.get(r, 0)) {
            throw InconsistentSystem("right-hand side is outside the span of the selected columns");
        }
    }
    BitVector x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (rhs.get(r, 0)) {
            x.set(cols[pivots[r]]);
        }
    }
    return x;
}

BitVector solve(const BinaryMatrix &m, const BitVector &s) {
    if (s.size() != m.rows()) {
        throw InvalidParameter("syndrome length does not match row count");
    }
    BinaryMatrix work = m;
    BinaryMatrix rhs(m.rows(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        rhs.set(r, 0, s.get(r));
    }
    std::vector<std::size_t> pivots = gauss_jordan(work, &rhs);
    for (std::size_t r = pivots.size(); r < m.rows(); ++r) {
        if (rhs.get(r, 0)) {
            throw InconsistentSystem("no solution to M x = s");
        }
    }
    BitVector x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (rhs.get(r, 0)) {
            x.set(pivots[r]);
        }
    }
    return x;
}

bool in_rowspace(const BinaryMatrix &m, const BitVector &v) {
    if (v.size() != m.cols()) {
        throw InvalidParameter("vector length does not match column count");
    }
    return RowSpace(m).contains(v);
}

std::vector<BitVector> kernel_basis(const BinaryMatrix &m) {
    BinaryMatrix work = m;
    std::vector<std::size_t> pivots = gauss_jordan(work, nullptr);
    std::vector<char> is_pivot(m.cols(), 0);
    for (std::size_t c : pivots) {
        is_pivot[c] = 1;
    }
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        BitVector v(m.cols());
        v.set(f);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (work.get(r, f)) {
                v.set(pivots[r]);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

RowSpace::RowSpace(const BinaryMatrix &m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BitVector v = reduce(m.row(r));
        if (v.none()) {
            continue;
        }
        std::size_t pivot = 0;
        for (std::size_t k = 0; k < v.words().size(); ++k) {
            if (v.words()[k]) {
                pivot = k * 64 + static_cast<std::size_t>(std::countr_zero(v.words()[k]));
                break;
            }
        }
        basis_.push_back(std::move(v));
        pivots_.push_back(pivot);
    }
}

BitVector RowSpace::reduce(BitVector v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (v.get(pivots_[i])) {
            v ^= basis_[i];
        }
    }
    return v;
}

bool RowSpace::contains(BitVector v) const {
    return reduce(std::move(v)).none();
}

void write_sparse(std::ostream &out, const BinaryMatrix &m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        bool first = true;
        for (std::size_t c : m.row(r).support()) {
            if (!first) {
                out << ' ';
            }
            out << c;
            first = false;
        }
        out << '\n';
    }
}

BinaryMatrix read_sparse(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("missing sparse-matrix header");
    }
    std::istringstream header(line);
    long long rows = -1;
    long long cols = -1;
    if (!(header >> rows >> cols) || rows < 0 || cols < 0) {
        throw ParseError("malformed sparse-matrix header: '" + line + "'");
    }
    std::string extra;
    if (header >> extra) {
        throw ParseError("trailing tokens in sparse-matrix header");
    }
    BinaryMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (!std::getline(in, line)) {
            break;  // missing trailing lines are zero rows
        }
        std::istringstream fields(line);
        std::string token;
        while (fields >> token) {
            std::size_t used = 0;
            long long c = -1;
            try {
                c = std::stoll(token, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != token.size() || c < 0 || c >= cols) {
                throw ParseError("bad column index '" + token + "' on row " + std::to_string(r));
            }
            if (m.get(r, static_cast<std::size_t>(c))) {
                throw ParseError("duplicate column index on row " + std::to_string(r));
            }
            m.set(r, static_cast<std::size_t>(c));
        }
    }
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            throw ParseError("more rows than declared in header");
        }
    }
    return m;
}

void save_sparse(const std::string &path, const BinaryMatrix &m) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open " + path + " for writing");
    }
    write_sparse(out, m);
}

BinaryMatrix load_sparse(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path);
    }
    return read_sparse(in);
}

}  // namespace lposd
