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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lposd {

/// Bit-packed vector over GF(2).
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static BitVector from_support(std::size_t n, std::span<const std::size_t> support);
    static BitVector from_bits(std::span<const std::uint8_t> bits);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value = true) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const;
    bool any() const;
    bool none() const { return !any(); }
    /// Parity of the bitwise AND with `other`.
    bool dot(const BitVector &other) const;
    std::vector<std::size_t> support() const;
    std::vector<std::uint8_t> to_bits() const;
    std::string to_string() const;

    BitVector &operator^=(const BitVector &other);
    BitVector &operator&=(const BitVector &other);
    friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector &b) { return a &= b; }
    bool operator==(const BitVector &other) const = default;

    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

   private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense matrix over GF(2) with bit-packed rows.
///
/// Sparse position lists are accepted at the boundary (`from_positions`,
/// the text format in io) and densified here, since elimination dominates
/// every consumer of this type.
class BinaryMatrix {
   public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static BinaryMatrix identity(std::size_t n);
    static BinaryMatrix from_rows(std::size_t cols, const std::vector<std::vector<std::size_t>> &row_supports);
    static BinaryMatrix from_positions(
        std::size_t rows, std::size_t cols, std::span<const std::pair<std::size_t, std::size_t>> positions);
    static BinaryMatrix from_dense(const std::vector<std::vector<int>> &entries);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }

    const BitVector &row(std::size_t r) const { return rows_[r]; }
    BitVector &row(std::size_t r) { return rows_[r]; }
    BitVector column(std::size_t c) const;
    void append_row(BitVector row);

    /// Positions holding 1, row-major order.
    std::vector<std::pair<std::size_t, std::size_t>> positions() const;
    std::vector<std::vector<std::size_t>> row_supports() const;
    std::vector<std::vector<std::size_t>> column_supports() const;
    std::size_t count_ones() const;
    std::size_t max_row_weight() const;
    std::size_t max_column_weight() const;
    bool is_zero() const;

    BinaryMatrix transpose() const;
    BinaryMatrix select_columns(std::span<const std::size_t> cols) const;
    BitVector multiply(const BitVector &v) const;

    bool operator==(const BinaryMatrix &other) const = default;

   private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

BinaryMatrix operator*(const BinaryMatrix &a, const BinaryMatrix &b);
BinaryMatrix kron(const BinaryMatrix &a, const BinaryMatrix &b);
BinaryMatrix hstack(const BinaryMatrix &left, const BinaryMatrix &right);
BinaryMatrix vstack(const BinaryMatrix &top, const BinaryMatrix &bottom);

struct RowReduction {
    BinaryMatrix reduced;               ///< Reduced row echelon form.
    std::vector<std::size_t> pivot_cols;  ///< pivot_cols[r] is the pivot of reduced row r.
    BinaryMatrix transform;             ///< transform * M == reduced.
};

std::size_t rank(const BinaryMatrix &m);
RowReduction row_reduce(const BinaryMatrix &m);

/// Solves M_cols x = s for x supported on `cols`. The system is first made
/// full row rank; the columns must then be independent and span s.
/// Throws SingularSubmatrix when the columns are dependent and
/// InconsistentSystem when s lies outside their span.
BitVector solve_on_columns(const BinaryMatrix &m, std::span<const std::size_t> cols, const BitVector &s);

/// Any x with M x = s, or InconsistentSystem.
BitVector solve(const BinaryMatrix &m, const BitVector &s);

bool in_rowspace(const BinaryMatrix &m, const BitVector &v);
std::vector<BitVector> kernel_basis(const BinaryMatrix &m);

/// Echelon basis of a rowspace, reusable for many membership queries.
class RowSpace {
   public:
    explicit RowSpace(const BinaryMatrix &m);
    bool contains(BitVector v) const;
    /// v reduced against the basis; zero iff v is in the rowspace.
    BitVector reduce(BitVector v) const;
    std::size_t dimension() const { return basis_.size(); }
    const std::vector<BitVector> &basis() const { return basis_; }

   private:
    std::vector<BitVector> basis_;
    std::vector<std::size_t> pivots_;
};

// Sparse text format: "rows cols" header, then one line per row listing
// the 0-based columns holding 1 (an empty line is a zero row).
void write_sparse(std::ostream &out, const BinaryMatrix &m);
BinaryMatrix read_sparse(std::istream &in);
void save_sparse(const std::string &path, const BinaryMatrix &m);
BinaryMatrix load_sparse(const std::string &path);

}  // namespace lposd
